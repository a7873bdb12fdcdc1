//! Polynomial arithmetic: sparse multivariate polynomials in the
//! `q[i][j]`, dense univariate polynomials and rational functions in `q`.

pub(crate) mod intpoly;
mod mpoly;
mod text;
mod upoly;

pub use mpoly::{MPoly, Monomial, VarId};
pub use upoly::{UPoly, URat};

use std::collections::BTreeMap;

use crate::gaussian::GaussianRational;

/// An assignment of values to variables.
pub type Point = BTreeMap<VarId, GaussianRational>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = &MPoly::one() + &MPoly::q(1, 2);
        let b = &MPoly::one() - &MPoly::q(1, 2);
        assert_eq!((&a * &b).to_string(), "1 - q[1][2]^2");
    }

    #[test]
    fn commutative_reordering() {
        let a = &MPoly::q(1, 2) * &MPoly::q(2, 1);
        let b = &MPoly::q(1, 3) * &MPoly::q(3, 1);
        assert_eq!((&a * &b).to_string(), "q[1][2]*q[1][3]*q[2][1]*q[3][1]");
        assert_eq!(&a + &MPoly::zero(), a);
    }

    #[test]
    fn conjugation() {
        assert_eq!(MPoly::q(2, 3).conj(), MPoly::q(3, 2));
        let x = MPoly::q(1, 2).scale(&GaussianRational::i());
        assert_eq!(x.conj(), MPoly::q(2, 1).scale(&-GaussianRational::i()));
        let y = p("(1/2+3*i)*q[1][2]^2*q[3][1] - q[2][2] + 7");
        assert_eq!(y.conj().conj(), y);
    }

    #[test]
    fn evaluation() {
        let half = GaussianRational::from_fractions(1, 2, 0, 1);
        let pt: Point = [(VarId::new(1, 2), half.clone()), (VarId::new(2, 1), half)].into();
        let v = p("1 - q[1][2]*q[2][1]").eval(&pt).unwrap();
        assert_eq!(v, GaussianRational::from_fractions(3, 4, 0, 1));
        let c = GaussianRational::from_fractions(5, 7, -1, 3);
        assert_eq!(MPoly::constant(c.clone()).eval(&Point::new()).unwrap(), c);
        assert_eq!(
            MPoly::q(1, 3).eval(&pt),
            Err(Error::MissingAssignment(VarId::new(1, 3)))
        );
    }

    #[test]
    fn substitution() {
        let m: BTreeMap<_, _> = [(VarId::new(1, 2), VarId::new(1, 1))].into();
        assert_eq!(MPoly::q(1, 2).substitute_vars(&m).unwrap(), MPoly::q(1, 1));
        let m: BTreeMap<_, _> = [
            (VarId::new(1, 2), VarId::new(5, 6)),
            (VarId::new(3, 4), VarId::new(5, 6)),
        ]
        .into();
        assert_eq!(p("q[1][2] + q[3][4]").substitute_vars(&m).unwrap().to_string(), "2*q[5][6]");
        assert!(MPoly::q(9, 9).substitute_vars(&m).is_err());
    }

    #[test]
    fn single_variable_collapse_agrees_with_uniform_specialization() {
        let x = p("1 - 2*q[1][2]*q[2][1] + q[1][2]^2*q[2][3] - 4*q[3][3]^3");
        let all: BTreeMap<_, _> = x.variables().into_iter().map(|v| (v, VarId::new(1, 1))).collect();
        let renamed = x.substitute_vars(&all).unwrap();
        let via_rename = UPoly::from_coeffs(
            (0..=renamed.total_degree().unwrap())
                .map(|d| {
                    let m = if d == 0 {
                        Monomial::one()
                    } else {
                        Monomial::from_factors([(VarId::new(1, 1), d)])
                    };
                    renamed.coeff(&m).re
                })
                .collect(),
        );
        assert_eq!(via_rename, x.specialize_uniform().unwrap());
        assert_eq!(via_rename, UPoly::from_ints(&[1, 0, -2, -3]));
    }

    #[test]
    fn exact_division() {
        let a = p("1 - q[1][2]*q[2][1]");
        let b = p("1 + q[1][3]*q[3][1] - 2*q[2][2]");
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(a.exact_div(&b), Err(Error::NotDivisible));
        assert_eq!(a.exact_div(&MPoly::zero()), Err(Error::DivisionByZeroPoly));
        assert_eq!(p("6*q[1][2]^2").exact_div(&p("3*q[1][2]")).unwrap(), p("2*q[1][2]"));
    }

    #[test]
    fn lex_order_is_multiplicative() {
        let ms = [
            Monomial::one(),
            Monomial::from_factors([(VarId::new(1, 2), 1)]),
            Monomial::from_factors([(VarId::new(2, 1), 1)]),
            Monomial::from_factors([(VarId::new(1, 2), 1), (VarId::new(3, 1), 2)]),
            Monomial::from_factors([(VarId::new(1, 1), 1), (VarId::new(2, 1), 1)]),
        ];
        for a in &ms {
            for b in &ms {
                for c in &ms {
                    assert_eq!(a.lex_cmp(b), a.mul(c).lex_cmp(&b.mul(c)));
                }
            }
        }
    }
}
