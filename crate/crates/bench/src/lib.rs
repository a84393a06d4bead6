//! Inputs shared by the benchmarks.

use authcodes::designs::OrderedDesign;
use authcodes::oracle::{Attack, GameSpec, Target};
use authcodes::{catalog, AuthCode};

/// The 25-point splitting design with the cells of every odd row rotated,
/// so that it is no longer equitable.
pub fn scrambled_splitting25() -> OrderedDesign {
    let code = catalog::splitting25();
    let rows = code
        .matrix()
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut row = row.clone();
            if i % 2 == 1 {
                row.rotate_left(1);
            }
            row
        })
        .collect();
    OrderedDesign::new(25, 3, rows).expect("rotating cells keeps rows valid")
}

pub fn game(code: AuthCode, attack: Attack) -> GameSpec {
    GameSpec {
        target: Target::Code(code),
        attack,
    }
}
