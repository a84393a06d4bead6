use super::{DesignError, DesignParams, OrderedDesign};

/// Validates `design` as a `(v, u × c, 1)`-splitting BIBD: every unordered
/// pair of distinct points lies in different cells of exactly one row.
pub fn validate_splitting_bibd(
    design: &OrderedDesign,
    u: usize,
    c: usize,
) -> Result<DesignParams, DesignError> {
    let v = design.v();
    if design.b() == 0 {
        return Err(DesignError::NoBlocks);
    }
    for (row, cells) in design.rows().iter().enumerate() {
        if cells.len() != u {
            return Err(DesignError::RowWidth {
                row,
                found: cells.len(),
                expected: u,
            });
        }
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
    if v < 2 || u < 2 {
        return Err(DesignError::DegenerateBlocks { k: u * c });
    }

    let mut split = vec![0usize; v * v];
    let mut replication = vec![0usize; v];
    for cells in design.rows() {
        for (i, ci) in cells.iter().enumerate() {
            for &x in ci {
                replication[x] += 1;
            }
            for cj in &cells[i + 1..] {
                for &x in ci {
                    for &y in cj {
                        split[x.min(y) * v + x.max(y)] += 1;
                    }
                }
            }
        }
    }
    for x in 0..v {
        for y in x + 1..v {
            let count = split[x * v + y];
            if count != 1 {
                return Err(DesignError::SplitPairCoverage {
                    pair: (x, y),
                    count,
                });
            }
        }
    }
    let r = replication[0];
    if let Some((point, &count)) = replication.iter().enumerate().find(|(_, &n)| n != r) {
        return Err(DesignError::Replication {
            point,
            count,
            expected: r,
        });
    }
    Ok(DesignParams {
        v,
        b: design.b(),
        r,
        k: u * c,
        lambda: 1,
        u,
        c,
    })
}
