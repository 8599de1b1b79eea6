//! Regions of the triangular lattice.
//!
//! Lattice points use skewed coordinates `(x, y)` with unit vectors at 60
//! degrees. The up triangle `(x, y)` has corners `(x,y), (x+1,y), (x,y+1)`; the
//! down triangle `(x, y)` has corners `(x+1,y), (x,y+1), (x+1,y+1)`. The two
//! triangles with the same `(x, y)` form a lozenge.
//!
//! The `(a, b, c)` hexagon has corners `(0,0), (a,0), (a,b), (a-c,b+c),
//! (-c,b+c), (-c,c)`. When `a = b` it is symmetric about the line
//! `x - y = -c`, which passes through the centre and cuts the two `c` sides
//! perpendicularly. Cells meeting that line in their interior are the axis
//! cells; they pair up into lozenges along the axis.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::{SerializeTuple, Serializer};
use serde::Serialize;

use crate::closed_forms::{CenteredProblem, HexagonSpec};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
    pub orientation: Orientation,
}

impl Cell {
    pub fn up(x: i32, y: i32) -> Self {
        Cell { x, y, orientation: Orientation::Up }
    }

    pub fn down(x: i32, y: i32) -> Self {
        Cell { x, y, orientation: Orientation::Down }
    }

    pub fn corners(&self) -> [(i32, i32); 3] {
        let (x, y) = (self.x, self.y);
        match self.orientation {
            Orientation::Up => [(x, y), (x + 1, y), (x, y + 1)],
            Orientation::Down => [(x + 1, y), (x, y + 1), (x + 1, y + 1)],
        }
    }

    /// The three cells sharing an edge with this one.
    pub fn neighbors(&self) -> [Cell; 3] {
        let (x, y) = (self.x, self.y);
        match self.orientation {
            Orientation::Up => [Cell::down(x, y), Cell::down(x - 1, y), Cell::down(x, y - 1)],
            Orientation::Down => [Cell::up(x, y), Cell::up(x + 1, y), Cell::up(x, y + 1)],
        }
    }

    pub fn is_adjacent(&self, other: &Cell) -> bool {
        self.neighbors().contains(other)
    }

    fn translated(&self, dx: i32, dy: i32) -> Cell {
        Cell { x: self.x + dx, y: self.y + dy, ..*self }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.orientation {
            Orientation::Up => 'u',
            Orientation::Down => 'd',
        };
        write!(f, "({},{},{o})", self.x, self.y)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&self.x)?;
        t.serialize_element(&self.y)?;
        t.serialize_element(match self.orientation {
            Orientation::Up => "u",
            Orientation::Down => "d",
        })?;
        t.end()
    }
}

/// Two adjacent cells, one up and one down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lozenge {
    up: Cell,
    down: Cell,
}

impl Lozenge {
    pub fn new(a: Cell, b: Cell) -> Result<Self> {
        let (up, down) = match (a.orientation, b.orientation) {
            (Orientation::Up, Orientation::Down) => (a, b),
            (Orientation::Down, Orientation::Up) => (b, a),
            _ => return domain(format!("{a} and {b} have the same orientation")),
        };
        if !up.is_adjacent(&down) {
            return domain(format!("{a} and {b} do not share an edge"));
        }
        Ok(Lozenge { up, down })
    }

    /// The lozenge `up(x,y) + down(x,y)`.
    pub fn at(x: i32, y: i32) -> Self {
        Lozenge { up: Cell::up(x, y), down: Cell::down(x, y) }
    }

    pub fn up(&self) -> Cell {
        self.up
    }

    pub fn down(&self) -> Cell {
        self.down
    }

    pub fn cells(&self) -> [Cell; 2] {
        [self.up, self.down]
    }

    fn translated(&self, dx: i32, dy: i32) -> Lozenge {
        Lozenge { up: self.up.translated(dx, dy), down: self.down.translated(dx, dy) }
    }
}

impl fmt::Display for Lozenge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.up, self.down)
    }
}

impl Serialize for Lozenge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.up, self.down].serialize(s)
    }
}

/// A finite set of cells, optionally with marked lozenges that carry weight
/// `1/2` in weighted counts.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Region {
    cells: BTreeSet<Cell>,
    marked_rhombi: Vec<Lozenge>,
}

impl Region {
    pub fn new(cells: impl IntoIterator<Item = Cell>, marked_rhombi: Vec<Lozenge>) -> Result<Self> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        let mut seen = BTreeSet::new();
        for l in &marked_rhombi {
            for c in l.cells() {
                if !cells.contains(&c) {
                    return domain(format!("marked lozenge {l} leaves the region"));
                }
                if !seen.insert(c) {
                    return domain(format!("marked lozenges overlap at {c}"));
                }
            }
        }
        let mut marked_rhombi = marked_rhombi;
        marked_rhombi.sort();
        Ok(Region { cells, marked_rhombi })
    }

    pub fn from_cells(cells: impl IntoIterator<Item = Cell>) -> Self {
        Region { cells: cells.into_iter().collect(), marked_rhombi: Vec::new() }
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn marked_rhombi(&self) -> &[Lozenge] {
        &self.marked_rhombi
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.contains(c)
    }

    pub fn contains_lozenge(&self, l: &Lozenge) -> bool {
        l.cells().iter().all(|c| self.contains(c))
    }

    pub fn count_orientation(&self, o: Orientation) -> usize {
        self.cells.iter().filter(|c| c.orientation == o).count()
    }

    pub fn is_balanced(&self) -> bool {
        self.count_orientation(Orientation::Up) == self.count_orientation(Orientation::Down)
    }

    /// The region with the cells of `l` deleted; marked lozenges touching
    /// them are dropped.
    pub fn without(&self, l: &Lozenge) -> Region {
        let gone = l.cells();
        Region {
            cells: self.cells.iter().filter(|c| !gone.contains(c)).copied().collect(),
            marked_rhombi: self
                .marked_rhombi
                .iter()
                .filter(|m| m.cells().iter().all(|c| !gone.contains(c)))
                .copied()
                .collect(),
        }
    }

    /// Translate so that the smallest `x` and the smallest `y` are both zero.
    pub fn normalized(&self) -> Region {
        let dx = self.cells.iter().map(|c| c.x).min().unwrap_or(0);
        let dy = self.cells.iter().map(|c| c.y).min().unwrap_or(0);
        Region {
            cells: self.cells.iter().map(|c| c.translated(-dx, -dy)).collect(),
            marked_rhombi: self.marked_rhombi.iter().map(|l| l.translated(-dx, -dy)).collect(),
        }
    }

    /// Repeatedly remove lozenges forced by a cell with a single neighbour in
    /// the region. Cells of marked lozenges are never removed. Returns the
    /// number of lozenges removed.
    pub fn remove_forced(&mut self) -> usize {
        let protected: BTreeSet<Cell> = self.marked_rhombi.iter().flat_map(|l| l.cells()).collect();
        let mut removed = 0;
        loop {
            let forced = self.cells.iter().find_map(|c| {
                if protected.contains(c) {
                    return None;
                }
                let mut inside = c.neighbors().into_iter().filter(|d| self.cells.contains(d));
                match (inside.next(), inside.next()) {
                    (Some(d), None) if !protected.contains(&d) => Some((*c, d)),
                    _ => None,
                }
            });
            let Some((c, d)) = forced else { return removed };
            self.cells.remove(&c);
            self.cells.remove(&d);
            removed += 1;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("region serializes")
    }
}

fn inside_hexagon(h: &HexagonSpec, (x, y): (i32, i32)) -> bool {
    let (a, b, c) = (h.a() as i32, h.b() as i32, h.c() as i32);
    (0..=b + c).contains(&y) && (-c..=a).contains(&x) && (0..=a + b).contains(&(x + y))
}

pub fn build_hexagon(h: &HexagonSpec) -> Region {
    let (a, b, c) = (h.a() as i32, h.b() as i32, h.c() as i32);
    let mut cells = BTreeSet::new();
    for y in 0..=b + c {
        for x in -c..=a {
            for cell in [Cell::up(x, y), Cell::down(x, y)] {
                if cell.corners().iter().all(|&p| inside_hexagon(h, p)) {
                    cells.insert(cell);
                }
            }
        }
    }
    Region { cells, marked_rhombi: Vec::new() }
}

fn require_centered(h: &HexagonSpec) -> Result<()> {
    if h.a() != h.b() || !h.has_central_lozenge() {
        return domain(format!("hexagon {h} has no central lozenge"));
    }
    Ok(())
}

/// The lozenge containing the centre of an `(a, a, c)` hexagon with `a + c`
/// odd. It lies on the symmetry axis.
pub fn central_lozenge(h: &HexagonSpec) -> Result<Lozenge> {
    require_centered(h)?;
    let y = ((h.a() + h.c() - 1) / 2) as i32;
    Ok(Lozenge::at(y - h.c() as i32, y))
}

pub fn build_punctured(h: &HexagonSpec) -> Result<Region> {
    let centre = central_lozenge(h)?;
    Ok(build_hexagon(h).without(&centre))
}

/// Signed position relative to the symmetry axis of an `(a, a, c)` hexagon:
/// zero for axis cells.
fn axis_side(c: &Cell, third_side: u32) -> i32 {
    (c.x - c.y + third_side as i32).signum()
}

/// The punctured hexagon cut along its symmetry axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisSplit {
    /// Cells strictly on one side of the axis, with forced lozenges removed.
    pub upper: Region,
    /// Axis cells and cells strictly on the other side; full axis lozenges
    /// are marked.
    pub lower: Region,
    /// Number of lozenges the axis cells of the punctured hexagon form.
    pub k: u32,
}

pub fn split_at_axis(p: &CenteredProblem) -> Result<AxisSplit> {
    let h = p.hexagon();
    let punctured = build_punctured(&h)?;
    let c = h.c();

    let axis: Vec<Cell> = punctured.cells.iter().filter(|x| axis_side(x, c) == 0).copied().collect();
    if !axis.len().is_multiple_of(2) {
        return Err(Error::Invariant(format!("odd number of axis cells in {h}")));
    }
    let k = (axis.len() / 2) as u32;
    let expected = p.axis_exponent();
    if k != expected {
        return Err(Error::Invariant(format!("{h}: axis carries {k} lozenges, expected {expected}")));
    }

    let marked: Vec<Lozenge> = axis
        .iter()
        .filter(|x| x.orientation == Orientation::Up)
        .map(|x| Lozenge::at(x.x, x.y))
        .filter(|l| punctured.contains_lozenge(l))
        .collect();

    let mut upper = Region::from_cells(punctured.cells.iter().filter(|x| axis_side(x, c) > 0).copied());
    let mut lower = Region::new(punctured.cells.iter().filter(|x| axis_side(x, c) <= 0).copied(), marked)?;
    upper.remove_forced();
    lower.remove_forced();
    Ok(AxisSplit { upper, lower, k })
}

/// Number of marked lozenges the lower half carries: one less than the
/// number of full lozenges on the axis of the unpunctured hexagon.
pub fn marked_rhombus_count(p: &CenteredProblem) -> u32 {
    2 * p.n() - 2
}
