//! Polynomials over the integers, over prime fields and over finite
//! extension fields, together with `φ`-adic expansions and factorization
//! modulo `p`.

mod ext;
mod int;
mod modp;

pub use ext::{is_squarefree, ElemDisplay, ExtField, ExtPoly, FieldElem};
pub use int::{gauss_valuation, phi_expansion, reduce_mod_p, IntPoly, PhiExpansion};
pub use modp::{canonical_cmp, factor_mod_p, ModPoly};

use num_bigint::BigInt;

use crate::arith::Prime;

/// Lift of a residue polynomial to the integers with coefficients in `[0, p)`.
pub fn lift(g: &ModPoly) -> IntPoly {
    IntPoly::new(g.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// Irreducible factors of `f mod p` with multiplicities, lifted to monic
/// integer polynomials with coefficients in `[0, p)`.
pub fn lifted_factors(f: &IntPoly, p: Prime) -> crate::Result<Vec<(IntPoly, ModPoly, u32)>> {
    Ok(factor_mod_p(&f.reduce_mod_p(p))?
        .into_iter()
        .map(|(g, e)| (lift(&g), g, e))
        .collect())
}
