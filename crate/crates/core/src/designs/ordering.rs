//! Equitable orderings.
//!
//! A design is equitably ordered when, for every cell position, the multiset
//! union of the cells at that position over all rows contains every point
//! the same number of times (`r/u`). For plain BIBDs with `k | r` an ordering
//! always exists and is peeled off one column at a time with max-flow; for
//! splitting designs a bounded backtracking search is used, since the
//! divisibility condition is necessary but not known to be sufficient.

use std::fmt;

use super::flow::FlowNetwork;
use super::{
    validate_bibd, validate_splitting_bibd, BaseBlocks, Cell, DesignError, OrderedDesign, Point,
};
use crate::rational::Rational;

/// Default node budget for [`equitable_order_splitting`].
pub const DEFAULT_SEARCH_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitableViolation {
    pub position: usize,
    pub point: Point,
    pub count: usize,
    /// Average occurrences per (position, point); what every count would
    /// have to equal.
    pub expected: Rational,
}

impl fmt::Display for EquitableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "position {} holds point {} {} times, expected {}",
            self.position, self.point, self.count, self.expected
        )
    }
}

/// Result of a splitting-ordering search. `NoneFound` means the search was
/// exhausted or hit its budget; it is not a proof that no ordering exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitOrdering {
    Found(OrderedDesign),
    NoneFound { nodes: usize },
}

/// Returns the common multiplicity `r/u` if every point occurs equally
/// often at every cell position.
pub fn check_equitable(design: &OrderedDesign) -> Result<usize, EquitableViolation> {
    let (u, v) = (design.u(), design.v());
    let mut counts = vec![0usize; u * v];
    for row in design.rows() {
        for (pos, cell) in row.iter().enumerate() {
            for &x in cell {
                counts[pos * v + x] += 1;
            }
        }
    }
    let total: usize = counts.iter().sum();
    let expected = Rational::ratio(total, (u * v).max(1));
    for pos in 0..u {
        for x in 0..v {
            let count = counts[pos * v + x];
            if Rational::ratio(count, 1) != expected {
                return Err(EquitableViolation {
                    position: pos,
                    point: x,
                    count,
                    expected,
                });
            }
        }
    }
    Ok(expected.to_usize().unwrap_or(0))
}

/// Orders the blocks of a BIBD with `k | r` so every point occurs exactly
/// `r/k` times in every position. Row `j` of the output is block `j` of the
/// input, split into `k` singleton cells.
///
/// Each of the `k` rounds solves a degree-constrained subgraph problem on
/// the remaining block–point incidences (blocks degree 1, points degree
/// `r/k`) as a max-flow. The remaining incidence graph stays biregular, so
/// every round saturates; a short round is reported as an internal error.
pub fn equitable_order(blocks: &OrderedDesign) -> Result<OrderedDesign, DesignError> {
    let params = validate_bibd(blocks)?;
    let (v, b, k, r) = (params.v, params.b, params.k, params.r);
    if r % k != 0 {
        return Err(DesignError::NotDivisible { r, k });
    }
    let per_position = (r / k) as u64;
    let mut remaining: Vec<Vec<Point>> = blocks.blocks();
    let mut ordered: Vec<Vec<Cell>> = vec![Vec::with_capacity(k); b];

    for round in 0..k {
        let source = b + v;
        let sink = source + 1;
        let mut net = FlowNetwork::new(b + v + 2);
        for j in 0..b {
            net.add_edge(source, j, 1);
        }
        let mut incidence = Vec::new();
        for (j, pts) in remaining.iter().enumerate() {
            for &x in pts {
                incidence.push((j, x, net.add_edge(j, b + x, 1)));
            }
        }
        for x in 0..v {
            net.add_edge(b + x, sink, per_position);
        }
        let flow = net.max_flow(source, sink);
        if flow != b as u64 {
            return Err(DesignError::Internal(format!(
                "round {round} routed {flow} of {b} blocks"
            )));
        }
        for (j, x, e) in incidence {
            if net.flow(e) == 1 {
                ordered[j].push(vec![x]);
                remaining[j].retain(|&p| p != x);
            }
        }
    }

    let design = OrderedDesign::new(v, k, ordered)?;
    if let Err(violation) = check_equitable(&design) {
        return Err(DesignError::Internal(violation.to_string()));
    }
    Ok(design)
}

fn orderability_modulus(u: usize, c: usize) -> usize {
    u * (u - 1) * c * c
}

fn check_orderability(v: usize, u: usize, c: usize) -> Result<(), DesignError> {
    let modulus = orderability_modulus(u, c);
    if v % modulus != 1 % modulus {
        return Err(DesignError::OrderabilityCondition { v, modulus });
    }
    Ok(())
}

/// Searches for an equitable ordering of a `(v, u × c, 1)`-splitting BIBD
/// by permuting the cells within each row.
///
/// Each row keeps a domain of admissible cell permutations. Every node
/// filters the domains against the counting constraints (each point exactly
/// `r/u` times per position) until nothing changes, then checks each point
/// with a small flow over the cells still undecided. Branching picks the
/// row with the smallest domain (lowest index on ties) and tries its
/// permutations in lexicographic order. `budget` caps the number of
/// branches taken.
pub fn equitable_order_splitting(
    design: &OrderedDesign,
    u: usize,
    c: usize,
    budget: usize,
) -> Result<SplitOrdering, DesignError> {
    let params = validate_splitting_bibd(design, u, c)?;
    check_orderability(params.v, u, c)?;
    let mut search = Search::new(design, params.r / u, budget);
    let found = search.run();
    match found {
        Some(perms) => {
            let rows = design
                .rows()
                .iter()
                .zip(perms)
                .map(|(row, perm)| perm.iter().map(|&ci| row[ci].clone()).collect())
                .collect();
            let ordered = OrderedDesign::new(design.v(), u, rows)?;
            if let Err(violation) = check_equitable(&ordered) {
                return Err(DesignError::Internal(violation.to_string()));
            }
            Ok(SplitOrdering::Found(ordered))
        }
        None => Ok(SplitOrdering::NoneFound {
            nodes: search.nodes,
        }),
    }
}

/// As [`equitable_order_splitting`], starting from base blocks. When every
/// orbit is full, developing the base blocks with their cell order fixed is
/// already equitable and no search is needed.
pub fn equitable_order_splitting_base(
    base: &BaseBlocks,
    budget: usize,
) -> Result<SplitOrdering, DesignError> {
    let developed = base.develop()?;
    let params = validate_splitting_bibd(&developed, base.u, base.c)?;
    check_orderability(params.v, base.u, base.c)?;
    if base.has_full_orbits() && check_equitable(&developed).is_ok() {
        return Ok(SplitOrdering::Found(developed));
    }
    equitable_order_splitting(&developed, base.u, base.c, budget)
}

struct Search<'a> {
    design: &'a OrderedDesign,
    v: usize,
    u: usize,
    target: usize,
    budget: usize,
    nodes: usize,
    /// For each point, the (row, cell) pairs containing it.
    occurrences: Vec<Vec<(usize, usize)>>,
    /// All permutations of `0..u` in lexicographic order; `perm[pos]` is
    /// the cell placed at `pos`.
    perms: Vec<Vec<usize>>,
    /// `position_of[p][ci]`: where permutation `p` puts cell `ci`.
    position_of: Vec<Vec<usize>>,
}

type Domains = Vec<Vec<usize>>;

impl<'a> Search<'a> {
    fn new(design: &'a OrderedDesign, target: usize, budget: usize) -> Self {
        let (v, u) = (design.v(), design.u());
        let mut occurrences = vec![Vec::new(); v];
        for (j, row) in design.rows().iter().enumerate() {
            for (ci, cell) in row.iter().enumerate() {
                for &x in cell {
                    occurrences[x].push((j, ci));
                }
            }
        }
        let mut perm: Vec<usize> = (0..u).collect();
        let mut perms = vec![perm.clone()];
        while next_permutation(&mut perm) {
            perms.push(perm.clone());
        }
        let position_of = perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; u];
                for (pos, &ci) in p.iter().enumerate() {
                    inv[ci] = pos;
                }
                inv
            })
            .collect();
        Search {
            design,
            v,
            u,
            target,
            budget,
            nodes: 0,
            occurrences,
            perms,
            position_of,
        }
    }

    fn run(&mut self) -> Option<Vec<Vec<usize>>> {
        let all: Vec<usize> = (0..self.perms.len()).collect();
        let domains = vec![all; self.design.b()];
        let solved = self.solve(domains)?;
        Some(
            solved
                .into_iter()
                .map(|d| self.perms[d[0]].clone())
                .collect(),
        )
    }

    fn solve(&mut self, mut domains: Domains) -> Option<Domains> {
        if !self.propagate(&mut domains) || !self.flows_feasible(&domains) {
            return None;
        }
        let branch = (0..domains.len())
            .filter(|&j| domains[j].len() > 1)
            .min_by_key(|&j| (domains[j].len(), j));
        let Some(row) = branch else {
            return Some(domains);
        };
        for &perm in &domains[row].clone() {
            if self.nodes >= self.budget {
                return None;
            }
            self.nodes += 1;
            let mut next = domains.clone();
            next[row] = vec![perm];
            if let Some(done) = self.solve(next) {
                return Some(done);
            }
        }
        None
    }

    /// Enforces, for every (position, point), that exactly `target` rows
    /// put the point at that position. Filters row domains to a fixpoint;
    /// false on contradiction.
    fn propagate(&self, domains: &mut Domains) -> bool {
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..self.v {
                for pos in 0..self.u {
                    let mut must = Vec::new();
                    let mut maybe = Vec::new();
                    for &(j, ci) in &self.occurrences[x] {
                        let hits = domains[j]
                            .iter()
                            .filter(|&&p| self.position_of[p][ci] == pos)
                            .count();
                        if hits == domains[j].len() {
                            must.push((j, ci));
                        } else if hits > 0 {
                            maybe.push((j, ci));
                        }
                    }
                    let can = must.len() + maybe.len();
                    if must.len() > self.target || can < self.target {
                        return false;
                    }
                    if maybe.is_empty() {
                        continue;
                    }
                    let keep_at_pos = if can == self.target {
                        true
                    } else if must.len() == self.target {
                        false
                    } else {
                        continue;
                    };
                    for (j, ci) in maybe {
                        domains[j].retain(|&p| (self.position_of[p][ci] == pos) == keep_at_pos);
                        if domains[j].is_empty() {
                            return false;
                        }
                    }
                    changed = true;
                }
            }
        }
        true
    }

    /// For each point, the cells containing it in undecided rows must be
    /// assignable to positions (as allowed by the row domains) within the
    /// capacities left over by decided rows.
    fn flows_feasible(&self, domains: &Domains) -> bool {
        let u = self.u;
        for x in 0..self.v {
            let mut left = vec![self.target; u];
            let mut pending = Vec::new();
            for &(j, ci) in &self.occurrences[x] {
                if let [p] = domains[j][..] {
                    let pos = self.position_of[p][ci];
                    if left[pos] == 0 {
                        return false;
                    }
                    left[pos] -= 1;
                } else {
                    pending.push((j, ci));
                }
            }
            if pending.is_empty() {
                continue;
            }
            let n = pending.len();
            let source = n + u;
            let sink = source + 1;
            let mut net = FlowNetwork::new(n + u + 2);
            for (i, &(j, ci)) in pending.iter().enumerate() {
                net.add_edge(source, i, 1);
                for pos in 0..u {
                    if domains[j].iter().any(|&p| self.position_of[p][ci] == pos) {
                        net.add_edge(i, n + pos, 1);
                    }
                }
            }
            for (pos, &cap) in left.iter().enumerate() {
                net.add_edge(n + pos, sink, cap as u64);
            }
            if net.max_flow(source, sink) != n as u64 {
                return false;
            }
        }
        true
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm
        .iter()
        .rposition(|&x| x > perm[i])
        .expect("pivot has a successor");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::develop;

    fn fano_blocks() -> OrderedDesign {
        develop(&[vec![0, 1, 3]], 7).unwrap()
    }

    fn sts13_blocks() -> OrderedDesign {
        BaseBlocks::new(13, 1, 3, vec![vec![vec![0, 1, 4]], vec![vec![0, 2, 8]]])
            .unwrap()
            .develop()
            .unwrap()
    }

    fn splitting25() -> OrderedDesign {
        develop(&[vec![0, 1], vec![2, 4], vec![12, 20]], 25).unwrap()
    }

    /// Column tallies computed directly.
    fn column_counts(d: &OrderedDesign) -> Vec<Vec<usize>> {
        let mut t = vec![vec![0; d.v()]; d.u()];
        for row in d.rows() {
            for (pos, cell) in row.iter().enumerate() {
                for &x in cell {
                    t[pos][x] += 1;
                }
            }
        }
        t
    }

    #[test]
    fn permutations_in_lexicographic_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }

    #[test]
    fn fano_youden_square() {
        let ordered = equitable_order(&fano_blocks()).unwrap();
        assert_eq!(ordered.u(), 3);
        for col in column_counts(&ordered) {
            assert!(col.iter().all(|&n| n == 1));
        }
        for j in 0..7 {
            assert_eq!(ordered.block(j), fano_blocks().block(j));
        }
        assert_eq!(check_equitable(&ordered), Ok(1));
    }

    #[test]
    fn sts13_twice_per_column() {
        let ordered = equitable_order(&sts13_blocks()).unwrap();
        for col in column_counts(&ordered) {
            assert!(col.iter().all(|&n| n == 2));
        }
        assert_eq!(check_equitable(&ordered), Ok(2));
    }

    #[test]
    fn duplicated_block_fails_precondition() {
        let mut rows = fano_blocks().into_rows();
        rows.push(rows[0].clone());
        let d = OrderedDesign::new(7, 1, rows).unwrap();
        assert!(matches!(
            equitable_order(&d),
            Err(DesignError::PairCoverage { .. })
        ));
    }

    #[test]
    fn replication_not_divisible() {
        // AG(2,3): (9, 12, 4, 3, 1), r = 4 not divisible by 3
        let blocks = vec![
            vec![0, 1, 2],
            vec![3, 4, 5],
            vec![6, 7, 8],
            vec![0, 3, 6],
            vec![1, 4, 7],
            vec![2, 5, 8],
            vec![0, 4, 8],
            vec![1, 5, 6],
            vec![2, 3, 7],
            vec![0, 5, 7],
            vec![1, 3, 8],
            vec![2, 4, 6],
        ];
        let d = OrderedDesign::from_blocks(9, blocks).unwrap();
        assert_eq!(
            equitable_order(&d),
            Err(DesignError::NotDivisible { r: 4, k: 3 })
        );
    }

    #[test]
    fn table_and_swapped_table() {
        let youden = develop(&[vec![0], vec![1], vec![3]], 7).unwrap();
        assert_eq!(check_equitable(&youden), Ok(1));
        let mut rows = youden.into_rows();
        rows[0].swap(0, 1);
        let swapped = OrderedDesign::new(7, 3, rows).unwrap();
        let err = check_equitable(&swapped).unwrap_err();
        // position 0 now holds 1 twice and 0 never
        assert_eq!((err.position, err.point, err.count), (0, 0, 0));
        assert_eq!(err.expected, Rational::one());
    }

    #[test]
    fn splitting_25_is_equitable_as_developed() {
        assert_eq!(check_equitable(&splitting25()), Ok(2));
        let base =
            BaseBlocks::new(25, 3, 2, vec![vec![vec![0, 1], vec![2, 4], vec![12, 20]]]).unwrap();
        match equitable_order_splitting_base(&base, DEFAULT_SEARCH_BUDGET).unwrap() {
            SplitOrdering::Found(d) => assert_eq!(d, splitting25()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn search_recovers_scrambled_splitting_design() {
        let rows = splitting25()
            .into_rows()
            .into_iter()
            .enumerate()
            .map(|(t, mut row)| {
                row.rotate_left(t % 3);
                if t % 2 == 1 {
                    row.swap(0, 1);
                }
                row
            })
            .collect();
        let scrambled = OrderedDesign::new(25, 3, rows).unwrap();
        assert!(check_equitable(&scrambled).is_err());
        match equitable_order_splitting(&scrambled, 3, 2, DEFAULT_SEARCH_BUDGET).unwrap() {
            SplitOrdering::Found(d) => {
                assert_eq!(check_equitable(&d), Ok(2));
                for j in 0..d.b() {
                    assert_eq!(d.block(j), scrambled.block(j));
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn search_agrees_with_flow_for_c_one() {
        let fano = develop(&[vec![0], vec![1], vec![3]], 7).unwrap();
        let rows = fano
            .into_rows()
            .into_iter()
            .map(|mut r| {
                r.reverse();
                r.rotate_left(1);
                r
            })
            .collect();
        let d = OrderedDesign::new(7, 3, rows).unwrap();
        match equitable_order_splitting(&d, 3, 1, DEFAULT_SEARCH_BUDGET).unwrap() {
            SplitOrdering::Found(o) => assert_eq!(check_equitable(&o), Ok(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn orderability_condition_violation() {
        // AG(2,3) as a 3 × 1 splitting design: 9 is not 1 mod 6
        let blocks = [
            [0, 1, 2],
            [3, 4, 5],
            [6, 7, 8],
            [0, 3, 6],
            [1, 4, 7],
            [2, 5, 8],
            [0, 4, 8],
            [1, 5, 6],
            [2, 3, 7],
            [0, 5, 7],
            [1, 3, 8],
            [2, 4, 6],
        ];
        let rows = blocks
            .iter()
            .map(|b| b.iter().map(|&x| vec![x]).collect())
            .collect();
        let d = OrderedDesign::new(9, 3, rows).unwrap();
        assert_eq!(
            equitable_order_splitting(&d, 3, 1, 10),
            Err(DesignError::OrderabilityCondition { v: 9, modulus: 6 })
        );
    }

    #[test]
    fn zero_budget_reports_none_found() {
        let rows = splitting25()
            .into_rows()
            .into_iter()
            .map(|mut r| {
                r.swap(0, 2);
                r
            })
            .collect();
        let d = OrderedDesign::new(25, 3, rows).unwrap();
        assert_eq!(
            equitable_order_splitting(&d, 3, 2, 0).unwrap(),
            SplitOrdering::NoneFound { nodes: 0 }
        );
    }
}
