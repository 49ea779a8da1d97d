use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Monomial, MAX_VARS};

/// Monomial orders used by the engine.
///
/// `Elimination { mask }` compares the variables whose bit is set in `mask`
/// first (graded reverse lexicographic on that block), then breaks ties with
/// graded reverse lexicographic on the remaining variables. Any monomial
/// containing a masked variable is larger than every monomial free of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    GRevLex,
    Lex,
    Elimination { mask: u8 },
}

impl MonomialOrder {
    pub fn eliminating(vars: &[usize]) -> Self {
        MonomialOrder::Elimination { mask: vars.iter().fold(0u8, |m, &v| m | (1 << v)) }
    }

    pub fn descriptor(&self) -> String {
        match self {
            MonomialOrder::GRevLex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination { mask } => format!("elim{mask:08b}"),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GRevLex => grevlex_masked(a, b, 0xff),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination { mask } => {
                grevlex_masked(a, b, mask).then_with(|| grevlex_masked(a, b, !mask))
            }
        }
    }

    /// Does the order eliminate the masked variables (see `Elimination`)?
    pub fn eliminates(&self, vars_mask: u8) -> bool {
        match *self {
            MonomialOrder::Elimination { mask } => mask & vars_mask == vars_mask,
            MonomialOrder::Lex => {
                // Lex eliminates any prefix of the variables.
                vars_mask.count_ones() == 0 || (vars_mask.wrapping_add(1) & vars_mask) == 0
            }
            MonomialOrder::GRevLex => vars_mask == 0,
        }
    }
}

fn grevlex_masked(a: &Monomial, b: &Monomial, mask: u8) -> Ordering {
    let mut da = 0u32;
    let mut db = 0u32;
    for i in 0..MAX_VARS {
        if mask & (1 << i) != 0 {
            da += a.exps[i] as u32;
            db += b.exps[i] as u32;
        }
    }
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..MAX_VARS).rev() {
        if mask & (1 << i) != 0 && a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GRevLex;
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 0, 3])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_property() {
        let o = MonomialOrder::eliminating(&[2]);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
        assert!(o.eliminates(0b100));
        assert!(MonomialOrder::Lex.eliminates(0b011));
        assert!(!MonomialOrder::Lex.eliminates(0b010));
    }
}
