//! The six-element action on (α0, α1, α3), applied straight from the
//! printed table, and brute-force orbit membership.

use crate::field::OField;

/// Element names in table order; `e` is the identity.
pub const ELEMENTS: [&str; 6] = ["e", "s", "s2", "r", "rs", "rs2"];

/// Apply one table row.
pub fn table_act<F: OField>(elem: &str, a: &[F; 3]) -> [F; 3] {
    let [a0, a1, a3] = a.clone();
    match elem {
        "e" => [a0, a1, a3],
        "s" => [a3.sub(&a0), a1.sub(&a0), a0.neg()],
        "s2" => [a3.neg(), a1.sub(&a3), a0.sub(&a3)],
        "r" => [a3, a1, a0],
        "rs" => [a0.sub(&a3), a1.sub(&a3), a3.neg()],
        "rs2" => [a0.neg(), a1.sub(&a0), a3.sub(&a0)],
        _ => panic!("unknown element {elem}"),
    }
}

pub fn orbit<F: OField>(a: &[F; 3]) -> Vec<[F; 3]> {
    ELEMENTS.iter().map(|e| table_act(e, a)).collect()
}

/// Whether `b` is one of the six images of `a`.
pub fn brute_force_equivalent<F: OField>(a: &[F; 3], b: &[F; 3]) -> bool {
    orbit(a).iter().any(|x| x == b)
}
