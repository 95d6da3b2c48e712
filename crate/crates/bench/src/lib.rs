//! Shared inputs for the criterion benches.

use berger_rank::{parse_poly, UniPoly};

/// Trinomials x^m - x - 1, squarefree with full symmetric group for the degrees used here.
pub fn trinomial(m: usize) -> UniPoly {
    parse_poly(&format!("x^{m}-x-1")).expect("trinomial parses")
}

pub fn quadratic() -> UniPoly {
    parse_poly("y^2-1").expect("binomial parses")
}

pub const DEGREES: [usize; 4] = [5, 9, 13, 17];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_squarefree() {
        for m in DEGREES {
            let f = trinomial(m);
            assert_eq!(f.degree(), Some(m));
            assert!(f.is_squarefree());
        }
    }
}
