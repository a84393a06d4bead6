//! Random small codes and distributions for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::authcode::AuthCode;
use crate::designs::{develop, Cell, OrderedDesign};
use crate::distribution::Distribution;
use crate::rational::Rational;

/// Size limits for generated codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub max_b: usize,
    pub max_v: usize,
    pub max_u: usize,
    pub max_c: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_b: 12,
            max_v: 12,
            max_u: 4,
            max_c: 3,
        }
    }
}

/// Uniform about a third of the time; otherwise small integer weights,
/// possibly with zeros, normalised.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Distribution {
    if n == 1 || rng.gen_bool(1.0 / 3.0) {
        return Distribution::uniform(n).expect("n >= 1");
    }
    let mut raw: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=5)).collect();
    if raw.iter().all(|&w| w == 0) {
        raw[0] = 1;
    }
    let total: usize = raw.iter().sum();
    Distribution::new(raw.into_iter().map(|w| Rational::ratio(w, total)).collect())
        .expect("weights sum to one")
}

/// Splits `points` into cells of the given sizes, in order.
fn carve(points: &[usize], sizes: &[usize]) -> Vec<Cell> {
    let mut at = 0;
    sizes
        .iter()
        .map(|&s| {
            let cell = points[at..at + s].to_vec();
            at += s;
            cell
        })
        .collect()
}

fn pick_u_c<R: Rng + ?Sized>(rng: &mut R, shape: Shape, max_v: usize) -> (usize, usize) {
    let u = rng.gen_range(1..=shape.max_u.min(max_v));
    let c = rng.gen_range(1..=shape.max_c.min(max_v / u).max(1));
    (u, c)
}

/// Random rows with cells of arbitrary (nonzero) sizes.
pub fn random_code<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> AuthCode {
    let v = rng.gen_range(1..=shape.max_v);
    let u = rng.gen_range(1..=shape.max_u.min(v));
    let b = rng.gen_range(1..=shape.max_b);
    let messages: Vec<usize> = (0..v).collect();
    let rows = (0..b)
        .map(|_| {
            let used = rng.gen_range(u..=v);
            let mut sizes = vec![1; u];
            for _ in u..used {
                sizes[rng.gen_range(0..u)] += 1;
            }
            let chosen: Vec<usize> = messages.choose_multiple(rng, used).copied().collect();
            carve(&chosen, &sizes)
        })
        .collect();
    finish(rng, v, u, rows)
}

/// Random rows in which every cell has the same size `c`.
pub fn random_splitting_code<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> AuthCode {
    let v = rng.gen_range(1..=shape.max_v);
    let (u, c) = pick_u_c(rng, shape, v);
    let b = rng.gen_range(1..=shape.max_b);
    let messages: Vec<usize> = (0..v).collect();
    let rows = (0..b)
        .map(|_| {
            let chosen: Vec<usize> = messages.choose_multiple(rng, u * c).copied().collect();
            carve(&chosen, &vec![c; u])
        })
        .collect();
    finish(rng, v, u, rows)
}

/// Develops a random base row through `Z_v` (so `b = v`). Each message
/// lands `c` times in every column.
pub fn developed_code<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> AuthCode {
    let v = rng.gen_range(1..=shape.max_v.min(shape.max_b));
    let (u, c) = pick_u_c(rng, shape, v);
    let messages: Vec<usize> = (0..v).collect();
    let chosen: Vec<usize> = messages.choose_multiple(rng, u * c).copied().collect();
    let matrix = develop(&carve(&chosen, &vec![c; u]), v).expect("disjoint base cells");
    let sources = random_distribution(rng, u);
    AuthCode::new(matrix, sources).expect("matching source count")
}

/// Moves one message of one cell to a message unused in that row, keeping
/// cell sizes. Returns the input unchanged when every row is full.
pub fn near_miss<R: Rng + ?Sized>(rng: &mut R, code: &AuthCode) -> AuthCode {
    let v = code.v();
    let mut rows = code.matrix().rows().to_vec();
    let open: Vec<usize> = (0..rows.len())
        .filter(|&k| code.matrix().block(k).len() < v)
        .collect();
    let Some(&k) = open.choose(rng) else {
        return code.clone();
    };
    let block = code.matrix().block(k);
    let unused: Vec<usize> = (0..v).filter(|m| block.binary_search(m).is_err()).collect();
    let s = rng.gen_range(0..code.u());
    let i = rng.gen_range(0..rows[k][s].len());
    rows[k][s][i] = *unused.choose(rng).expect("row is not full");
    let matrix = OrderedDesign::new(v, code.u(), rows).expect("cells stay disjoint");
    AuthCode::new(matrix, code.sources().clone()).expect("matching source count")
}

fn finish<R: Rng + ?Sized>(rng: &mut R, v: usize, u: usize, rows: Vec<Vec<Cell>>) -> AuthCode {
    let matrix = OrderedDesign::new(v, u, rows).expect("cells are disjoint by construction");
    AuthCode::new(matrix, random_distribution(rng, u)).expect("matching source count")
}

/// One of the generators above, chosen at random.
pub fn mixed_code<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> AuthCode {
    match rng.gen_range(0..4) {
        0 => random_code(rng, shape),
        1 => random_splitting_code(rng, shape),
        2 => developed_code(rng, shape),
        _ => {
            let base = developed_code(rng, shape);
            near_miss(rng, &base)
        }
    }
}
