use super::{DesignError, DesignParams, OrderedDesign};

/// Validates the rows of `design` (cells merged, order ignored) as a
/// `(v, b, r, k, λ)`-BIBD. Repeated blocks are allowed.
///
/// On non-constant pair coverage the witness is the least-covered pair
/// (smallest such pair in lexicographic order).
pub fn validate_bibd(design: &OrderedDesign) -> Result<DesignParams, DesignError> {
    let v = design.v();
    let blocks = design.blocks();
    let b = blocks.len();
    if b == 0 {
        return Err(DesignError::NoBlocks);
    }
    let k = blocks[0].len();
    if let Some((block, found)) = blocks
        .iter()
        .map(Vec::len)
        .enumerate()
        .find(|&(_, len)| len != k)
    {
        return Err(DesignError::UnevenBlockSizes {
            block,
            expected: k,
            found,
        });
    }
    if k < 2 {
        return Err(DesignError::DegenerateBlocks { k });
    }

    let mut pairs = vec![0usize; v * v];
    let mut replication = vec![0usize; v];
    for block in &blocks {
        for (i, &x) in block.iter().enumerate() {
            replication[x] += 1;
            for &y in &block[i + 1..] {
                pairs[x * v + y] += 1;
            }
        }
    }

    let mut min: Option<((usize, usize), usize)> = None;
    let mut max = 0;
    for x in 0..v {
        for y in x + 1..v {
            let count = pairs[x * v + y];
            max = max.max(count);
            if min.is_none_or(|(_, m)| count < m) {
                min = Some(((x, y), count));
            }
        }
    }
    let Some((pair, lambda)) = min else {
        return Err(DesignError::DegenerateBlocks { k });
    };
    if lambda != max {
        return Err(DesignError::PairCoverage {
            pair,
            count: lambda,
            max,
        });
    }

    let r = replication[0];
    if let Some((point, &count)) = replication.iter().enumerate().find(|(_, &c)| c != r) {
        return Err(DesignError::Replication {
            point,
            count,
            expected: r,
        });
    }

    Ok(DesignParams {
        v,
        b,
        r,
        k,
        lambda,
        u: 1,
        c: 1,
    })
}
