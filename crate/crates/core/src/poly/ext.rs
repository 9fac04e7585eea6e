use std::fmt;

use num_bigint::BigUint;

use crate::arith::Prime;
use crate::error::{invalid, Result};
use crate::poly::ModPoly;

/// The finite field `F_p[x]/(φ̄)` for a monic irreducible `φ̄`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtField {
    modulus: ModPoly,
}

/// Elements are residue polynomials of degree below the field degree.
pub type FieldElem = ModPoly;

impl ExtField {
    pub fn new(modulus: &ModPoly) -> Result<ExtField> {
        if !modulus.is_irreducible() {
            return invalid(format!("{modulus} is not irreducible over F_{}", modulus.prime()));
        }
        Ok(ExtField {
            modulus: modulus.monic(),
        })
    }

    pub fn prime_field(p: Prime) -> ExtField {
        ExtField {
            modulus: ModPoly::x(p),
        }
    }

    pub fn prime(&self) -> Prime {
        self.modulus.prime()
    }

    pub fn modulus(&self) -> &ModPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// Number of elements `p^k`.
    pub fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.prime().get()), self.degree())
    }

    pub fn zero(&self) -> FieldElem {
        ModPoly::zero(self.prime())
    }

    pub fn one(&self) -> FieldElem {
        ModPoly::one(self.prime())
    }

    pub fn elem(&self, a: &ModPoly) -> FieldElem {
        a.rem(&self.modulus)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a + b
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a - b
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.mul_mod(b, &self.modulus)
    }

    pub fn pow(&self, a: &FieldElem, e: &BigUint) -> FieldElem {
        a.pow_mod(e, &self.modulus)
    }

    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.modulus);
        debug_assert!(g.is_one());
        Some(s.rem(&self.modulus))
    }

    pub fn frobenius(&self, a: &FieldElem) -> FieldElem {
        self.pow(a, &BigUint::from(self.prime().get()))
    }

    /// Every element, for small fields only.
    pub fn elements(&self) -> Vec<FieldElem> {
        let p = self.prime().get();
        let k = self.degree();
        let total = p.pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let c = (0..k)
                    .map(|_| {
                        let d = idx % p;
                        idx /= p;
                        d
                    })
                    .collect();
                ModPoly::new(self.prime(), c)
            })
            .collect()
    }
}

/// Polynomial in `y` with coefficients in an [`ExtField`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtPoly {
    field: ExtField,
    c: Vec<FieldElem>,
}

impl ExtPoly {
    pub fn new(field: &ExtField, c: Vec<FieldElem>) -> ExtPoly {
        let mut c: Vec<FieldElem> = c.iter().map(|a| field.elem(a)).collect();
        while c.last().is_some_and(ModPoly::is_zero) {
            c.pop();
        }
        ExtPoly {
            field: field.clone(),
            c,
        }
    }

    /// Polynomial with coefficients in the prime subfield.
    pub fn from_base(field: &ExtField, c: &[u64]) -> ExtPoly {
        let p = field.prime();
        ExtPoly::new(field, c.iter().map(|&a| ModPoly::constant(p, a)).collect())
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    fn y(field: &ExtField) -> ExtPoly {
        ExtPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn monic(&self) -> ExtPoly {
        match self.c.last() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l).unwrap();
                self.scale(&inv)
            }
        }
    }

    fn scale(&self, a: &FieldElem) -> ExtPoly {
        ExtPoly::new(&self.field, self.c.iter().map(|x| self.field.mul(x, a)).collect())
    }

    pub fn add(&self, o: &ExtPoly) -> ExtPoly {
        let n = self.c.len().max(o.c.len());
        let z = self.field.zero();
        ExtPoly::new(
            &self.field,
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &ExtPoly) -> ExtPoly {
        let n = self.c.len().max(o.c.len());
        let z = self.field.zero();
        ExtPoly::new(
            &self.field,
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, o: &ExtPoly) -> ExtPoly {
        if self.is_zero() || o.is_zero() {
            return ExtPoly::new(&self.field, Vec::new());
        }
        let mut out = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        ExtPoly::new(&self.field, out)
    }

    pub fn div_rem(&self, d: &ExtPoly) -> (ExtPoly, ExtPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (ExtPoly::new(&self.field, Vec::new()), self.clone());
        }
        let f = &self.field;
        let inv = f.inv(d.c.last().unwrap()).unwrap();
        let mut r = self.c.clone();
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dd], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[i + j] = f.sub(&r[i + j], &f.mul(&c, dj));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (ExtPoly::new(f, q), ExtPoly::new(f, r))
    }

    pub fn gcd(&self, o: &ExtPoly) -> ExtPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> ExtPoly {
        let p = self.field.prime();
        ExtPoly::new(
            &self.field,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.scale(i as u64 % p.get()))
                .collect(),
        )
    }

    fn mul_mod(&self, o: &ExtPoly, m: &ExtPoly) -> ExtPoly {
        self.mul(o).div_rem(m).1
    }

    fn pow_mod(&self, e: &BigUint, m: &ExtPoly) -> ExtPoly {
        let mut acc = ExtPoly::new(&self.field, vec![self.field.one()]).div_rem(m).1;
        let base = self.div_rem(m).1;
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    /// True iff `gcd(g, g')` is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return invalid("squarefreeness of the zero polynomial");
        }
        Ok(self.gcd(&self.derivative()).is_constant())
    }

    /// Degrees of the irreducible factors of a squarefree polynomial,
    /// ascending, by distinct-degree factorization over the field.
    pub fn squarefree_factor_degrees(&self) -> Result<Vec<usize>> {
        if !self.is_squarefree()? {
            return invalid("polynomial is not squarefree");
        }
        let q = self.field.order();
        let mut f = self.monic();
        let y = ExtPoly::y(&self.field);
        let mut h = y.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while f.degree().unwrap_or(0) >= 2 * d {
            h = h.pow_mod(&q, &f);
            let g = h.sub(&y).gcd(&f);
            if !g.is_constant() {
                let k = g.degree().unwrap() / d;
                out.extend(std::iter::repeat(d).take(k));
                f = f.div_rem(&g).0;
                h = h.div_rem(&f).1;
            }
            d += 1;
        }
        if let Some(deg) = f.degree().filter(|&k| k > 0) {
            out.push(deg);
        }
        Ok(out)
    }
}

/// Squarefree test over a finite extension field.
pub fn is_squarefree(g: &ExtPoly) -> Result<bool> {
    g.is_squarefree()
}

impl fmt::Display for ExtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = if a.is_constant() {
                a.coeff(0).to_string()
            } else {
                format!("({})", ElemDisplay(a))
            };
            match (i, coeff.as_str()) {
                (0, c) => f.write_str(c)?,
                (1, "1") => f.write_str("y")?,
                (1, c) => write!(f, "{c}y")?,
                (_, "1") => write!(f, "y^{i}")?,
                (_, c) => write!(f, "{c}y^{i}")?,
            }
        }
        Ok(())
    }
}

/// Renders a field element as a polynomial in `z`, the class of `x`.
pub struct ElemDisplay<'a>(pub &'a FieldElem);

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::modp::fmt_residue_poly(self.0.coeffs(), "z", f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let f2 = ExtField::prime_field(pr(2));
        assert!(ExtPoly::from_base(&f2, &[1, 1, 1]).is_squarefree().unwrap());
        let f3 = ExtField::prime_field(pr(3));
        // (y - 1)^2 = y^2 - 2y + 1 = y^2 + y + 1 over F_3
        assert!(!ExtPoly::from_base(&f3, &[1, 1, 1]).is_squarefree().unwrap());
        for (p, d, m) in [(5u64, 3usize, 2u64), (7, 4, 3), (3, 2, 2), (2, 3, 1)] {
            let f = ExtField::prime_field(pr(p));
            let mut c = vec![0u64; d + 1];
            c[d] = 1;
            c[0] = p - m;
            assert!(ExtPoly::from_base(&f, &c).is_squarefree().unwrap());
        }
        assert!(ExtPoly::from_base(&f2, &[]).is_squarefree().is_err());
    }

    #[test]
    fn y2_plus_y_plus_1_over_extensions() {
        // Irreducible over F_2 and F_8, splits over F_4.
        let f2 = ExtField::prime_field(pr(2));
        assert_eq!(ExtPoly::from_base(&f2, &[1, 1, 1]).squarefree_factor_degrees().unwrap(), vec![2]);
        let f4 = ExtField::new(&ModPoly::new(pr(2), vec![1, 1, 1])).unwrap();
        assert_eq!(ExtPoly::from_base(&f4, &[1, 1, 1]).squarefree_factor_degrees().unwrap(), vec![1, 1]);
        let f8 = ExtField::new(&ModPoly::new(pr(2), vec![1, 1, 0, 1])).unwrap();
        assert_eq!(ExtPoly::from_base(&f8, &[1, 1, 1]).squarefree_factor_degrees().unwrap(), vec![2]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(ExtField::new(&ModPoly::new(pr(2), vec![1, 0, 1])).is_err());
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, m) in [(2u64, vec![1u64, 1, 1]), (2, vec![1, 1, 0, 1]), (3, vec![1, 0, 1]), (5, vec![2, 0, 1]), (7, vec![0, 1])] {
            let field = ExtField::new(&ModPoly::new(pr(p), m)).unwrap();
            let elems = field.elements();
            assert_eq!(BigUint::from(elems.len()), field.order());
            let mut fixed = 0;
            for a in &elems {
                if !a.is_zero() {
                    let inv = field.inv(a).unwrap();
                    assert!(field.mul(a, &inv).is_one());
                }
                if field.frobenius(a) == *a {
                    fixed += 1;
                    assert!(a.is_constant());
                }
            }
            assert_eq!(fixed, p);
            // Frobenius is additive and multiplicative on a sample of pairs.
            for a in elems.iter().take(8) {
                for b in elems.iter().rev().take(8) {
                    assert_eq!(field.frobenius(&field.add(a, b)), field.add(&field.frobenius(a), &field.frobenius(b)));
                    assert_eq!(field.frobenius(&field.mul(a, b)), field.mul(&field.frobenius(a), &field.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn factor_degrees_over_prime_field_match_modp_factorization() {
        let p = pr(5);
        let f5 = ExtField::prime_field(p);
        // y^8 - 3 is squarefree over F_5.
        let g = ExtPoly::from_base(&f5, &[2, 0, 0, 0, 0, 0, 0, 0, 1]);
        let mut expected: Vec<usize> = crate::poly::factor_mod_p(&ModPoly::new(p, vec![2, 0, 0, 0, 0, 0, 0, 0, 1]))
            .unwrap()
            .iter()
            .map(|(f, _)| f.degree().unwrap())
            .collect();
        expected.sort();
        assert_eq!(g.squarefree_factor_degrees().unwrap(), expected);
    }
}
