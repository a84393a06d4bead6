//! Block designs over cyclic groups: development of base blocks, BIBD,
//! external difference family and splitting-BIBD validation, and equitable
//! orderings (Youden squares and their splitting generalisation).

mod bibd;
mod edf;
pub mod flow;
mod ordering;
mod splitting;

pub use bibd::validate_bibd;
pub use edf::{validate_edf, EdfSpec};
pub use ordering::{
    check_equitable, equitable_order, equitable_order_splitting, equitable_order_splitting_base,
    EquitableViolation, SplitOrdering, DEFAULT_SEARCH_BUDGET,
};
pub use splitting::validate_splitting_bibd;

use std::collections::BTreeSet;

use thiserror::Error;

/// A point of a design; points are `0..v`.
pub type Point = usize;

/// A cell is a nonempty set of points, stored sorted.
pub type Cell = Vec<Point>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("point {point} in row {row} is outside 0..{v}")]
    PointOutOfRange { row: usize, point: Point, v: usize },
    #[error("row {row} cell {cell} is empty")]
    EmptyCell { row: usize, cell: usize },
    #[error("row {row} repeats point {point} inside cell {cell}")]
    RepeatedPoint {
        row: usize,
        cell: usize,
        point: Point,
    },
    #[error("row {row} has overlapping cells: point {point} lies in cells {first} and {second}")]
    OverlappingCells {
        row: usize,
        point: Point,
        first: usize,
        second: usize,
    },
    #[error("row {row} has {found} cells, expected {expected}")]
    RowWidth {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("row {row} cell {cell} has {found} points, expected {expected}")]
    CellSize {
        row: usize,
        cell: usize,
        found: usize,
        expected: usize,
    },
    #[error("group order must be at least 1")]
    ZeroGroupOrder,
    #[error("design has no blocks")]
    NoBlocks,
    #[error("blocks have uneven sizes: block 0 has {expected} points, block {block} has {found}")]
    UnevenBlockSizes {
        block: usize,
        expected: usize,
        found: usize,
    },
    #[error("blocks of size {k} are too small to form a design")]
    DegenerateBlocks { k: usize },
    #[error("pair ({0}, {1}) covered {count} times but other pairs are covered up to {max} times", pair.0, pair.1)]
    PairCoverage {
        pair: (Point, Point),
        count: usize,
        max: usize,
    },
    #[error("point {point} occurs in {count} blocks but point 0 occurs in {expected}")]
    Replication {
        point: Point,
        count: usize,
        expected: usize,
    },
    #[error("pair ({0}, {1}) is split across cells of {count} blocks, expected exactly 1", pair.0, pair.1)]
    SplitPairCoverage { pair: (Point, Point), count: usize },
    #[error("EDF needs at least two sets over a group of order at least 2")]
    DegenerateEdf,
    #[error("EDF set {set} has {found} elements, expected {expected}")]
    EdfSetSize {
        set: usize,
        found: usize,
        expected: usize,
    },
    #[error("EDF set {set} contains {element} which is outside Z_{n}")]
    EdfElementRange {
        set: usize,
        element: usize,
        n: usize,
    },
    #[error("EDF set {set} repeats element {element}")]
    EdfRepeatedElement { set: usize, element: usize },
    #[error(
        "external difference 0 arises as {x} - {y} with {x} in set {set_x} and {y} in set {set_y}"
    )]
    EdfZeroDifference {
        x: usize,
        y: usize,
        set_x: usize,
        set_y: usize,
    },
    #[error(
        "external difference {value} occurs {count} times, but {reference} occurs {expected} times"
    )]
    EdfNonUniform {
        value: usize,
        count: usize,
        reference: usize,
        expected: usize,
    },
    #[error("replication {r} is not divisible by {k}")]
    NotDivisible { r: usize, k: usize },
    #[error("v = {v} is not 1 mod {modulus} (= u(u-1)c^2), so no equitable ordering exists")]
    OrderabilityCondition { v: usize, modulus: usize },
    #[error("internal ordering failure: {0}")]
    Internal(String),
}

impl DesignError {
    /// Replaces the row index of a row-level error.
    pub fn at_row(self, index: usize) -> Self {
        use DesignError::*;
        match self {
            PointOutOfRange { point, v, .. } => PointOutOfRange {
                row: index,
                point,
                v,
            },
            EmptyCell { cell, .. } => EmptyCell { row: index, cell },
            RepeatedPoint { cell, point, .. } => RepeatedPoint {
                row: index,
                cell,
                point,
            },
            OverlappingCells {
                point,
                first,
                second,
                ..
            } => OverlappingCells {
                row: index,
                point,
                first,
                second,
            },
            RowWidth {
                found, expected, ..
            } => RowWidth {
                row: index,
                found,
                expected,
            },
            CellSize {
                cell,
                found,
                expected,
                ..
            } => CellSize {
                row: index,
                cell,
                found,
                expected,
            },
            other => other,
        }
    }
}

/// Parameters of a validated design. `c = 1` for plain BIBDs, and
/// `k = u * c` for splitting designs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
    pub u: usize,
    pub c: usize,
}

impl DesignParams {
    pub fn is_symmetric(&self) -> bool {
        self.b == self.v
    }
}

/// Rows of ordered cells over the points `0..v`.
///
/// The same shape carries plain blocks (one cell per row), Youden squares
/// (singleton cells), splitting blocks and encoding matrices. Within a row
/// the cells are pairwise disjoint; every row has exactly `u` cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedDesign {
    v: usize,
    u: usize,
    rows: Vec<Vec<Cell>>,
}

impl OrderedDesign {
    /// Validates and normalises (sorts) the cells.
    pub fn new(v: usize, u: usize, rows: Vec<Vec<Cell>>) -> Result<Self, DesignError> {
        let mut rows = rows;
        for (r, row) in rows.iter_mut().enumerate() {
            if row.len() != u {
                return Err(DesignError::RowWidth {
                    row: r,
                    found: row.len(),
                    expected: u,
                });
            }
            let mut owner: Vec<(Point, usize)> = Vec::new();
            for (ci, cell) in row.iter_mut().enumerate() {
                if cell.is_empty() {
                    return Err(DesignError::EmptyCell { row: r, cell: ci });
                }
                cell.sort_unstable();
                if let Some(w) = cell.windows(2).find(|w| w[0] == w[1]) {
                    return Err(DesignError::RepeatedPoint {
                        row: r,
                        cell: ci,
                        point: w[0],
                    });
                }
                for &p in cell.iter() {
                    if p >= v {
                        return Err(DesignError::PointOutOfRange {
                            row: r,
                            point: p,
                            v,
                        });
                    }
                    owner.push((p, ci));
                }
            }
            owner.sort_unstable();
            if let Some(w) = owner.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(DesignError::OverlappingCells {
                    row: r,
                    point: w[0].0,
                    first: w[0].1.min(w[1].1),
                    second: w[0].1.max(w[1].1),
                });
            }
        }
        Ok(OrderedDesign { v, u, rows })
    }

    /// Unordered blocks: one cell per row.
    pub fn from_blocks(v: usize, blocks: Vec<Vec<Point>>) -> Result<Self, DesignError> {
        Self::new(v, 1, blocks.into_iter().map(|b| vec![b]).collect())
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn u(&self) -> usize {
        self.u
    }

    /// Number of rows.
    pub fn b(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Cell] {
        &self.rows[i]
    }

    pub fn cell(&self, row: usize, col: usize) -> &[Point] {
        &self.rows[row][col]
    }

    pub fn into_rows(self) -> Vec<Vec<Cell>> {
        self.rows
    }

    /// Common cell size, if all cells have the same size.
    pub fn cell_size(&self) -> Option<usize> {
        let mut sizes = self.rows.iter().flatten().map(Vec::len);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    /// Union of a row's cells, sorted.
    pub fn block(&self, row: usize) -> Vec<Point> {
        let mut b: Vec<Point> = self.rows[row].iter().flatten().copied().collect();
        b.sort_unstable();
        b
    }

    pub fn blocks(&self) -> Vec<Vec<Point>> {
        (0..self.b()).map(|i| self.block(i)).collect()
    }

    /// Forgets the cell structure, keeping each row as a single cell.
    pub fn merged(&self) -> OrderedDesign {
        OrderedDesign {
            v: self.v,
            u: 1,
            rows: self.blocks().into_iter().map(|b| vec![b]).collect(),
        }
    }
}

/// Develops one ordered base row through `Z_n`: row `t` adds `t` to every
/// point, keeping the cell order.
pub fn develop(base_row: &[Cell], n: usize) -> Result<OrderedDesign, DesignError> {
    if n == 0 {
        return Err(DesignError::ZeroGroupOrder);
    }
    // validate the base row on its own so errors name row 0
    OrderedDesign::new(n, base_row.len(), vec![base_row.to_vec()])?;
    let rows = (0..n)
        .map(|t| {
            base_row
                .iter()
                .map(|cell| cell.iter().map(|&x| (x + t) % n).collect())
                .collect()
        })
        .collect();
    OrderedDesign::new(n, base_row.len(), rows)
}

/// A family of ordered base rows over `Z_n`, each with `u` cells of `c`
/// points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseBlocks {
    pub n: usize,
    pub u: usize,
    pub c: usize,
    pub bases: Vec<Vec<Cell>>,
}

impl BaseBlocks {
    pub fn new(n: usize, u: usize, c: usize, bases: Vec<Vec<Cell>>) -> Result<Self, DesignError> {
        if n == 0 {
            return Err(DesignError::ZeroGroupOrder);
        }
        let checked = OrderedDesign::new(n, u, bases)?;
        for (row, cells) in checked.rows().iter().enumerate() {
            if let Some((cell, found)) = cells
                .iter()
                .map(Vec::len)
                .enumerate()
                .find(|&(_, len)| len != c)
            {
                return Err(DesignError::CellSize {
                    row,
                    cell,
                    found,
                    expected: c,
                });
            }
        }
        Ok(BaseBlocks {
            n,
            u,
            c,
            bases: checked.into_rows(),
        })
    }

    /// Concatenates the developments of every base row, in base order.
    pub fn develop(&self) -> Result<OrderedDesign, DesignError> {
        let mut rows = Vec::with_capacity(self.n * self.bases.len());
        for base in &self.bases {
            rows.extend(develop(base, self.n)?.into_rows());
        }
        OrderedDesign::new(self.n, self.u, rows)
    }

    /// True when no nonzero translate fixes any base block (as a set of
    /// cells), i.e. every orbit has size `n`.
    pub fn has_full_orbits(&self) -> bool {
        self.bases.iter().all(|base| {
            let canon = |t: usize| -> BTreeSet<Vec<Point>> {
                base.iter()
                    .map(|cell| {
                        let mut c: Vec<Point> = cell.iter().map(|&x| (x + t) % self.n).collect();
                        c.sort_unstable();
                        c
                    })
                    .collect()
            };
            let start = canon(0);
            (1..self.n).all(|t| canon(t) != start)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(spec: &[&[usize]]) -> Vec<Cell> {
        spec.iter().map(|c| c.to_vec()).collect()
    }

    #[test]
    fn develop_fano_base() {
        let d = develop(&cells(&[&[0], &[1], &[3]]), 7).unwrap();
        assert_eq!(d.b(), 7);
        for i in 0..7 {
            assert_eq!(
                d.row(i),
                &cells(&[&[i], &[(1 + i) % 7], &[(3 + i) % 7]])[..]
            );
        }
    }

    #[test]
    fn develop_edf_row_one() {
        let d = develop(&cells(&[&[1, 7, 11], &[4, 6, 9], &[5, 16, 17]]), 19).unwrap();
        assert_eq!(d.b(), 19);
        assert_eq!(
            d.row(1),
            &cells(&[&[2, 8, 12], &[5, 7, 10], &[6, 17, 18]])[..]
        );
        // wraps: row 2 third cell is {7, 18, 0}
        assert_eq!(d.cell(2, 2), &[0, 7, 18]);
    }

    #[test]
    fn develop_trivial_group() {
        let base = cells(&[&[0]]);
        let d = develop(&base, 1).unwrap();
        assert_eq!(d.rows(), &[base][..]);
    }

    #[test]
    fn develop_rejects_overlap() {
        let err = develop(&cells(&[&[0, 1], &[1, 2], &[5, 6]]), 25).unwrap_err();
        assert_eq!(
            err,
            DesignError::OverlappingCells {
                row: 0,
                point: 1,
                first: 0,
                second: 1
            }
        );
    }

    #[test]
    fn develop_preserves_shape() {
        let base = cells(&[&[0, 1], &[2, 4], &[12, 20]]);
        let d = develop(&base, 25).unwrap();
        assert_eq!(d.row(0), &base[..]);
        assert!(d.rows().iter().all(|r| r.iter().all(|c| c.len() == 2)));
    }

    #[test]
    fn design_rejects_bad_rows() {
        assert!(matches!(
            OrderedDesign::new(3, 1, vec![vec![vec![]]]),
            Err(DesignError::EmptyCell { .. })
        ));
        assert!(matches!(
            OrderedDesign::new(3, 1, vec![vec![vec![3]]]),
            Err(DesignError::PointOutOfRange { point: 3, .. })
        ));
        assert!(matches!(
            OrderedDesign::new(3, 2, vec![vec![vec![0]]]),
            Err(DesignError::RowWidth { .. })
        ));
        assert!(matches!(
            OrderedDesign::new(3, 1, vec![vec![vec![1, 1]]]),
            Err(DesignError::RepeatedPoint { point: 1, .. })
        ));
    }

    #[test]
    fn full_orbit_detection() {
        let fano = BaseBlocks::new(7, 3, 1, vec![cells(&[&[0], &[1], &[3]])]).unwrap();
        assert!(fano.has_full_orbits());
        // {0, 2} in Z_4 is fixed by +2
        let short = BaseBlocks::new(4, 2, 1, vec![cells(&[&[0], &[2]])]).unwrap();
        assert!(!short.has_full_orbits());
    }
}
