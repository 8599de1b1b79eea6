//! Brute-force enumeration: lozenge tilings of regions (plain, through a
//! given lozenge, weighted by marked lozenges) and families of
//! vertex-disjoint lattice paths.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::exact::{integer, pow2};
use crate::lattice::{Cell, Lozenge, Region};
use crate::{ExactInt, ExactRational};

/// Limits on exhaustive search. Exceeding one is a resource error, never a
/// truncated count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Search nodes (placed lozenges or path prefixes) visited.
    pub max_nodes: u64,
    /// Product of single-path counts allowed for a path family.
    pub max_path_tuples: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 50_000_000,
            max_path_tuples: 1_000_000,
        }
    }
}

/// Which uncovered cell the search branches on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CellOrder {
    /// Smallest uncovered cell in the region's ordering.
    FirstUncovered,
    /// Uncovered cell with the fewest uncovered neighbours.
    #[default]
    FewestOptions,
}

struct Search<'a> {
    /// For each cell, its neighbours in the region and whether that pair is
    /// a marked lozenge.
    partners: Vec<Vec<(usize, bool)>>,
    covered: Vec<bool>,
    order: CellOrder,
    budget: &'a Budget,
    nodes: u64,
    /// Tilings found, indexed by how many marked lozenges they use.
    by_marked: Vec<u128>,
}

impl<'a> Search<'a> {
    fn new(r: &Region, order: CellOrder, budget: &'a Budget) -> Self {
        let cells: Vec<Cell> = r.cells().iter().copied().collect();
        let index: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let marked: BTreeSet<(Cell, Cell)> = r.marked_rhombi().iter().map(|l| (l.up(), l.down())).collect();
        let partners = cells
            .iter()
            .map(|c| {
                c.neighbors()
                    .iter()
                    .filter_map(|d| {
                        let j = *index.get(d)?;
                        let key = if d.orientation < c.orientation { (*d, *c) } else { (*c, *d) };
                        Some((j, marked.contains(&key)))
                    })
                    .collect()
            })
            .collect();
        Search {
            partners,
            covered: vec![false; cells.len()],
            order,
            budget,
            nodes: 0,
            by_marked: vec![0; r.marked_rhombi().len() + 1],
        }
    }

    fn free_partners(&self, i: usize) -> usize {
        self.partners[i].iter().filter(|(j, _)| !self.covered[*j]).count()
    }

    fn pick(&self) -> Option<usize> {
        let mut uncovered = (0..self.covered.len()).filter(|&i| !self.covered[i]);
        match self.order {
            CellOrder::FirstUncovered => uncovered.next(),
            CellOrder::FewestOptions => uncovered.min_by_key(|&i| self.free_partners(i)),
        }
    }

    fn run(&mut self, used_marked: usize) -> Result<()> {
        let Some(i) = self.pick() else {
            self.by_marked[used_marked] += 1;
            return Ok(());
        };
        self.covered[i] = true;
        for t in 0..self.partners[i].len() {
            let (j, is_marked) = self.partners[i][t];
            if self.covered[j] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget.max_nodes {
                return Err(Error::Resource {
                    what: "tiling search nodes".into(),
                    limit: self.budget.max_nodes,
                });
            }
            self.covered[j] = true;
            let result = self.run(used_marked + usize::from(is_marked));
            self.covered[j] = false;
            result?;
        }
        self.covered[i] = false;
        Ok(())
    }
}

/// Number of tilings using each possible count of marked lozenges.
pub fn tilings_by_marked(r: &Region, order: CellOrder, budget: &Budget) -> Result<Vec<u128>> {
    if !r.is_balanced() {
        return Ok(vec![0; r.marked_rhombi().len() + 1]);
    }
    let mut s = Search::new(r, order, budget);
    s.run(0)?;
    Ok(s.by_marked)
}

/// Number of lozenge tilings of `r`.
pub fn count_tilings(r: &Region, budget: &Budget) -> Result<ExactInt> {
    count_tilings_ordered(r, CellOrder::default(), budget)
}

pub fn count_tilings_ordered(r: &Region, order: CellOrder, budget: &Budget) -> Result<ExactInt> {
    Ok(tilings_by_marked(r, order, budget)?.into_iter().map(BigInt::from).sum())
}

/// Number of tilings of `r` that contain `l`.
pub fn count_tilings_containing(r: &Region, l: &Lozenge, budget: &Budget) -> Result<ExactInt> {
    if !r.contains_lozenge(l) {
        return domain(format!("lozenge {l} is not inside the region"));
    }
    count_tilings(&r.without(l), budget)
}

/// Sum over tilings of `2^-(marked lozenges used)`.
pub fn weighted_count(r: &Region, budget: &Budget) -> Result<ExactRational> {
    let counts = tilings_by_marked(r, CellOrder::default(), budget)?;
    Ok(counts
        .into_iter()
        .enumerate()
        .fold(ExactRational::zero(), |acc, (k, t)| acc + pow2(-(k as i64)) * ExactRational::from_integer(t.into())))
}

pub type Point = (i64, i64);

/// Starting and ending points of a family of lattice paths with unit steps
/// right `(+1, 0)` and down `(0, -1)`. Path `i` runs from `starts[i]` to
/// `ends[i]`; paths in `half_weight_starts` count `1/2` when their first
/// step is to the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFamilySpec {
    pub starts: Vec<Point>,
    pub ends: Vec<Point>,
    pub half_weight_starts: BTreeSet<usize>,
}

impl PathFamilySpec {
    pub fn new(starts: Vec<Point>, ends: Vec<Point>, half_weight_starts: BTreeSet<usize>) -> Result<Self> {
        if starts.len() != ends.len() {
            return domain(format!("{} starting points but {} end points", starts.len(), ends.len()));
        }
        if let Some(i) = half_weight_starts.iter().find(|&&i| i >= starts.len()) {
            return domain(format!("half-weight index {i} out of range"));
        }
        Ok(PathFamilySpec { starts, ends, half_weight_starts })
    }

    /// Paths of the odd-sided upper half: `(2i, i+m) -> (2n+i-1, i)`,
    /// `i = 1..=2n-2`.
    pub fn upper_odd(n: u32, m: u32) -> Self {
        let (n, m) = (n as i64, m as i64);
        let idx = 1..=2 * n - 2;
        PathFamilySpec {
            starts: idx.clone().map(|i| (2 * i, i + m)).collect(),
            ends: idx.map(|i| (2 * n + i - 1, i)).collect(),
            half_weight_starts: BTreeSet::new(),
        }
    }

    /// Paths of the even-sided upper half: `(2i, i+m-1) -> (2n+i+1, i)`,
    /// `i = 1..=2n`.
    pub fn upper_even(n: u32, m: u32) -> Self {
        let (n, m) = (n as i64, m as i64);
        let idx = 1..=2 * n;
        PathFamilySpec {
            starts: idx.clone().map(|i| (2 * i, i + m - 1)).collect(),
            ends: idx.map(|i| (2 * n + i + 1, i)).collect(),
            half_weight_starts: BTreeSet::new(),
        }
    }

    /// Weighted paths of the lower half: `(2i, i+m) -> (2n+i, i)` except
    /// that path `n` starts at `(2n+1, n+m)`; every other path has weight
    /// `1/2` when it starts horizontally.
    pub fn lower(n: u32, m: u32) -> Self {
        let (n, m) = (n as i64, m as i64);
        let idx = 1..=2 * n - 1;
        PathFamilySpec {
            starts: idx.clone().map(|i| if i == n { (2 * n + 1, n + m) } else { (2 * i, i + m) }).collect(),
            ends: idx.clone().map(|i| (2 * n + i, i)).collect(),
            half_weight_starts: idx.filter(|&i| i != n).map(|i| (i - 1) as usize).collect(),
        }
    }
}

/// Every path of right and down steps from `a` to `e`, as vertex lists.
fn all_paths(a: Point, e: Point) -> Vec<Vec<Point>> {
    let (dx, dy) = (e.0 - a.0, a.1 - e.1);
    if dx < 0 || dy < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = vec![a];
    extend_paths(e, &mut current, &mut out);
    out
}

fn extend_paths(e: Point, current: &mut Vec<Point>, out: &mut Vec<Vec<Point>>) {
    let p = *current.last().expect("path has a start");
    if p == e {
        out.push(current.clone());
        return;
    }
    for q in [(p.0 + 1, p.1), (p.0, p.1 - 1)] {
        if q.0 <= e.0 && q.1 >= e.1 {
            current.push(q);
            extend_paths(e, current, out);
            current.pop();
        }
    }
}

/// Single-path count `binom(dx+dy, dx)`, by dynamic programming.
pub fn count_paths(a: Point, e: Point) -> ExactInt {
    let (dx, dy) = (e.0 - a.0, a.1 - e.1);
    if dx < 0 || dy < 0 {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::from(1); dx as usize + 1];
    for _ in 0..dy {
        for j in 1..row.len() {
            let left = row[j - 1].clone();
            row[j] += left;
        }
    }
    row.pop().expect("non-empty row")
}

/// Weighted number of vertex-disjoint path families, pairing start `i`
/// with end `i`.
pub fn count_path_families(s: &PathFamilySpec, budget: &Budget) -> Result<ExactRational> {
    let mut tuples = BigInt::from(1);
    for (a, e) in s.starts.iter().zip(&s.ends) {
        tuples *= count_paths(*a, *e);
    }
    if tuples > BigInt::from(budget.max_path_tuples) {
        return Err(Error::Resource {
            what: "path tuples".into(),
            limit: budget.max_path_tuples,
        });
    }
    let options: Vec<Vec<(Vec<Point>, bool)>> = s
        .starts
        .iter()
        .zip(&s.ends)
        .enumerate()
        .map(|(i, (a, e))| {
            all_paths(*a, *e)
                .into_iter()
                .map(|p| {
                    let halved = s.half_weight_starts.contains(&i) && p.len() > 1 && p[1].0 > p[0].0;
                    (p, halved)
                })
                .collect()
        })
        .collect();
    // Index by number of halved paths.
    let mut by_halves = vec![0u64; options.len() + 1];
    let mut used = BTreeSet::new();
    families(&options, 0, 0, &mut used, &mut by_halves);
    Ok(by_halves
        .into_iter()
        .enumerate()
        .fold(ExactRational::zero(), |acc, (h, t)| acc + pow2(-(h as i64)) * integer(t as i64)))
}

fn families(
    options: &[Vec<(Vec<Point>, bool)>],
    i: usize,
    halves: usize,
    used: &mut BTreeSet<Point>,
    by_halves: &mut [u64],
) {
    if i == options.len() {
        by_halves[halves] += 1;
        return;
    }
    for (path, halved) in &options[i] {
        if path.iter().any(|p| used.contains(p)) {
            continue;
        }
        used.extend(path.iter().copied());
        families(options, i + 1, halves + usize::from(*halved), used, by_halves);
        for p in path {
            used.remove(p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{centered_count, macmahon_count, CenteredProblem, HexagonSpec};
    use crate::gv::{matrix_h_minus, matrix_h_plus, matrix_hbar_plus};
    use crate::lattice::{build_hexagon, build_punctured, central_lozenge, split_at_axis};
    use crate::matrix::exact_determinant;
    use crate::exact::rational;

    fn hex(a: u32, b: u32, c: u32) -> HexagonSpec {
        HexagonSpec::new(a, b, c).unwrap()
    }

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn small_hexagons() {
        assert_eq!(count_tilings(&build_hexagon(&hex(1, 1, 1)), &budget()).unwrap(), 2.into());
        assert_eq!(count_tilings(&build_hexagon(&hex(3, 3, 2)), &budget()).unwrap(), 175.into());
        assert_eq!(count_tilings(&Region::default(), &budget()).unwrap(), 1.into());
    }

    #[test]
    fn hexagons_match_box_formula() {
        let mut sides: Vec<(u32, u32, u32)> = Vec::new();
        for a in 0..=3 {
            for b in 0..=3 {
                for c in 0..=3 {
                    if a + b + c > 0 {
                        sides.push((a, b, c));
                    }
                }
            }
        }
        sides.extend([(4, 4, 1), (4, 4, 2), (5, 5, 1)]);
        for (a, b, c) in sides {
            let h = hex(a, b, c);
            assert_eq!(count_tilings(&build_hexagon(&h), &budget()).unwrap(), macmahon_count(&h).unwrap(), "{h}");
        }
    }

    #[test]
    fn centered_small() {
        let through = |a, c| {
            let h = hex(a, a, c);
            count_tilings_containing(&build_hexagon(&h), &central_lozenge(&h).unwrap(), &budget()).unwrap()
        };
        assert_eq!(through(3, 2), 85.into());
        assert_eq!(through(4, 1), 34.into());
        assert_eq!(through(1, 2), 1.into());
        assert_eq!(through(1, 0), centered_count(&CenteredProblem::odd(1, 0).unwrap()).unwrap());
        let outside = Lozenge::at(50, 50);
        assert!(count_tilings_containing(&build_hexagon(&hex(1, 1, 1)), &outside, &budget()).is_err());
    }

    #[test]
    fn heuristic_does_not_change_counts() {
        for h in [hex(2, 2, 2), hex(3, 2, 1), hex(3, 3, 2)] {
            let r = build_punctured(&hex(3, 3, 2)).unwrap();
            for region in [build_hexagon(&h), r] {
                assert_eq!(
                    count_tilings_ordered(&region, CellOrder::FirstUncovered, &budget()).unwrap(),
                    count_tilings_ordered(&region, CellOrder::FewestOptions, &budget()).unwrap()
                );
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Budget { max_nodes: 10, ..Budget::default() };
        let err = count_tilings(&build_hexagon(&hex(3, 3, 3)), &tight).unwrap_err();
        assert!(matches!(err, Error::Resource { limit: 10, .. }));
        let tight = Budget { max_path_tuples: 2, ..Budget::default() };
        assert!(count_path_families(&PathFamilySpec::upper_odd(2, 1), &tight).is_err());
    }

    #[test]
    fn unbalanced_regions_have_no_tilings() {
        let r = Region::from_cells([Cell::up(0, 0)]);
        assert_eq!(count_tilings(&r, &budget()).unwrap(), 0.into());
    }

    #[test]
    fn weighted_counts() {
        let plain = build_hexagon(&hex(2, 2, 1));
        assert_eq!(
            weighted_count(&plain, &budget()).unwrap(),
            ExactRational::from_integer(count_tilings(&plain, &budget()).unwrap())
        );
        let lower = split_at_axis(&CenteredProblem::odd(2, 1).unwrap()).unwrap().lower;
        assert_eq!(weighted_count(&lower, &budget()).unwrap(), rational(17, 4));
        let lower = split_at_axis(&CenteredProblem::odd(1, 2).unwrap()).unwrap().lower;
        assert_eq!(weighted_count(&lower, &budget()).unwrap(), rational(1, 1));
        // A single marked lozenge tiles itself once, at weight 1/2.
        let l = Lozenge::at(0, 0);
        let r = Region::new(l.cells(), vec![l]).unwrap();
        assert_eq!(weighted_count(&r, &budget()).unwrap(), rational(1, 2));
    }

    #[test]
    fn single_paths() {
        let s = PathFamilySpec::new(vec![(2, 3)], vec![(4, 1)], BTreeSet::new()).unwrap();
        assert_eq!(count_path_families(&s, &budget()).unwrap(), rational(6, 1));
        for (a, e) in [((0, 5), (3, 0)), ((1, 1), (1, 1)), ((0, 0), (2, 1))] {
            assert_eq!(all_paths(a, e).len(), count_paths(a, e).try_into().unwrap_or(0usize));
        }
        assert!(PathFamilySpec::new(vec![(0, 0)], vec![], BTreeSet::new()).is_err());
    }

    #[test]
    fn path_families_match_determinants() {
        assert_eq!(count_path_families(&PathFamilySpec::upper_odd(2, 1), &budget()).unwrap(), rational(5, 1));
        assert_eq!(count_path_families(&PathFamilySpec::lower(2, 1), &budget()).unwrap(), rational(17, 4));
        for n in 1..=2 {
            for m in 0..=3 {
                let det = exact_determinant(&matrix_h_plus(n, m).unwrap()).unwrap();
                assert_eq!(count_path_families(&PathFamilySpec::upper_odd(n, m), &budget()).unwrap(), det);
                let det = exact_determinant(&matrix_h_minus(n, m).unwrap()).unwrap();
                assert_eq!(count_path_families(&PathFamilySpec::lower(n, m), &budget()).unwrap(), det);
                if m >= 1 {
                    let det = exact_determinant(&matrix_hbar_plus(n, m).unwrap()).unwrap();
                    assert_eq!(count_path_families(&PathFamilySpec::upper_even(n, m), &budget()).unwrap(), det);
                }
            }
        }
    }

    #[test]
    fn halves_match_determinants() {
        for (n, m) in [(1, 0), (1, 1), (1, 2), (2, 1), (2, 2)] {
            let s = split_at_axis(&CenteredProblem::odd(n, m).unwrap()).unwrap();
            let det = exact_determinant(&matrix_h_plus(n, m).unwrap()).unwrap();
            assert_eq!(ExactRational::from_integer(count_tilings(&s.upper, &budget()).unwrap()), det, "n={n} m={m}");
            let det = exact_determinant(&matrix_h_minus(n, m).unwrap()).unwrap();
            assert_eq!(weighted_count(&s.lower, &budget()).unwrap(), det, "n={n} m={m}");
            if m >= 1 {
                let s = split_at_axis(&CenteredProblem::even(n, m).unwrap()).unwrap();
                let det = exact_determinant(&matrix_hbar_plus(n, m).unwrap()).unwrap();
                assert_eq!(ExactRational::from_integer(count_tilings(&s.upper, &budget()).unwrap()), det);
            }
        }
    }
}
