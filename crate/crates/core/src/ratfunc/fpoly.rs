//! Univariate polynomials in one chosen variable with coefficients in the
//! field of the remaining variables, and partial fractions.

use super::factor::{factor_univariate, FactorKind};
use super::poly::{Poly, Q};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Coefficients from the constant term upward; none involves `var`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPoly {
    nvars: usize,
    var: usize,
    c: Vec<RatFunc>,
}

impl FPoly {
    pub fn new(nvars: usize, var: usize, mut c: Vec<RatFunc>) -> FPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        debug_assert!(c.iter().all(|x| !x.involves(var)));
        FPoly { nvars, var, c }
    }

    pub fn zero(nvars: usize, var: usize) -> FPoly {
        FPoly::new(nvars, var, vec![])
    }

    pub fn constant(c: RatFunc, var: usize) -> FPoly {
        FPoly::new(c.nvars(), var, vec![c])
    }

    pub fn from_poly(p: &Poly, var: usize) -> FPoly {
        let c = p
            .coeffs_in(var)
            .into_iter()
            .map(RatFunc::from_poly)
            .collect();
        FPoly::new(p.nvars(), var, c)
    }

    /// Numerator over denominator with the denominator free of `var`.
    pub fn from_ratfunc(f: &RatFunc, var: usize) -> Option<FPoly> {
        if f.den().involves(var) {
            return None;
        }
        let d = RatFunc::from_poly(f.den().clone());
        let p = FPoly::from_poly(f.num(), var);
        Some(p.scale(&d.inv().expect("nonzero denominator")))
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let x = RatFunc::var(self.nvars, self.var);
        let mut acc = RatFunc::zero(self.nvars);
        for c in self.c.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    /// Clear denominators: returns `(p, d)` with `self = p / d`.
    pub fn to_poly_over(&self) -> (Poly, Poly) {
        let f = self.to_ratfunc();
        let (n, d) = f.into_parts();
        (n, d)
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.c.get(i).cloned().unwrap_or_else(|| RatFunc::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, -1 for zero.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> RatFunc {
        self.c.last().cloned().unwrap_or_else(|| RatFunc::zero(self.nvars))
    }

    fn like(&self, c: Vec<RatFunc>) -> FPoly {
        FPoly::new(self.nvars, self.var, c)
    }

    pub fn add(&self, o: &FPoly) -> FPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        self.like(c)
    }

    pub fn sub(&self, o: &FPoly) -> FPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect();
        self.like(c)
    }

    pub fn scale(&self, s: &RatFunc) -> FPoly {
        self.like(self.c.iter().map(|x| x * s).collect())
    }

    pub fn mul(&self, o: &FPoly) -> FPoly {
        if self.is_zero() || o.is_zero() {
            return self.like(vec![]);
        }
        let mut c = vec![RatFunc::zero(self.nvars); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        self.like(c)
    }

    pub fn pow(&self, n: u32) -> FPoly {
        let mut acc = self.like(vec![RatFunc::one(self.nvars)]);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, d: &FPoly) -> (FPoly, FPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.c.len() < d.c.len() {
            return (self.like(vec![]), self.clone());
        }
        let dd = d.c.len() - 1;
        let inv = d.lc().inv().expect("nonzero");
        let mut r = self.c.clone();
        let mut quo = vec![RatFunc::zero(self.nvars); r.len() - dd];
        for i in (0..quo.len()).rev() {
            let f = &r[i + dd] * &inv;
            if !f.is_zero() {
                for (j, x) in d.c.iter().enumerate() {
                    r[i + j] = &r[i + j] - &(&f * x);
                }
            }
            quo[i] = f;
        }
        r.truncate(dd);
        (self.like(quo), self.like(r))
    }

    pub fn rem(&self, d: &FPoly) -> FPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> FPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero"))
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &FPoly) -> (FPoly, FPoly, FPoly) {
        let one = self.like(vec![RatFunc::one(self.nvars)]);
        let zero = self.like(vec![]);
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (qt, r2) = r0.divrem(&r1);
            let s2 = s0.sub(&qt.mul(&s1));
            let t2 = t0.sub(&qt.mul(&t1));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn gcd(&self, o: &FPoly) -> FPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse modulo `m`, if coprime.
    pub fn inv_mod(&self, m: &FPoly) -> Option<FPoly> {
        let (g, s, _) = self.ext_gcd(m);
        if g.degree() != 0 {
            return None;
        }
        Some(s.rem(m))
    }

    pub fn derivative(&self) -> FPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x.scale(&super::poly::q(i as i64)))
            .collect();
        self.like(c)
    }

    /// `self(var + s)`.
    pub fn taylor_shift(&self, s: &Q) -> FPoly {
        let mut acc = self.like(vec![]);
        let lin = self.like(vec![RatFunc::constant(self.nvars, s.clone()), RatFunc::one(self.nvars)]);
        for c in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&self.like(vec![c.clone()]));
        }
        acc
    }

    /// Evaluate at a point of the field.
    pub fn eval(&self, x: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(self.nvars);
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct PartialFractionTerm {
    /// An irreducible factor of the denominator (polynomial in `var`).
    pub factor: Poly,
    /// Power of `factor` in the denominator of this term.
    pub order: u32,
    /// Numerator of degree below that of `factor`.
    pub numerator: FPoly,
}

#[derive(Clone, Debug)]
pub struct PartialFractions {
    pub var: usize,
    pub polynomial: FPoly,
    pub terms: Vec<PartialFractionTerm>,
}

impl PartialFractions {
    pub fn recombine(&self) -> RatFunc {
        let mut acc = self.polynomial.to_ratfunc();
        for t in &self.terms {
            let den = RatFunc::from_poly(t.factor.pow(t.order));
            acc = &acc + &(&t.numerator.to_ratfunc() / &den);
        }
        acc
    }
}

/// Exact partial fractions of `f` with respect to `var`.
pub fn partial_fractions(f: &RatFunc, var: usize) -> Result<PartialFractions> {
    let num = FPoly::from_poly(f.num(), var);
    let den_poly = f.den();
    if !den_poly.involves(var) {
        let d = RatFunc::from_poly(den_poly.clone());
        return Ok(PartialFractions {
            var,
            polynomial: num.scale(&d.inv()?),
            terms: vec![],
        });
    }
    let fac = factor_univariate(den_poly, var);
    if let Some(bad) = fac.factors.iter().find(|f| f.kind == FactorKind::Unverified) {
        return Err(Error::FactorizationIncomplete(format!(
            "denominator factor of degree {} in partial fractions",
            bad.poly.degree(var)
        )));
    }
    let den = FPoly::from_poly(den_poly, var);
    let (polynomial, rem) = num.divrem(&den);
    let unit = RatFunc::from_poly(fac.unit.clone());
    let mut terms = Vec::new();
    for (i, fi) in fac.factors.iter().enumerate() {
        let block = FPoly::from_poly(&fi.poly, var).pow(fi.multiplicity);
        let mut other = FPoly::constant(unit.clone(), var);
        for (j, fj) in fac.factors.iter().enumerate() {
            if j != i {
                other = other.mul(&FPoly::from_poly(&fj.poly, var).pow(fj.multiplicity));
            }
        }
        let inv = other.inv_mod(&block).expect("coprime factors");
        let a = rem.mul(&inv).rem(&block);
        // expand a in powers of the factor
        let base = FPoly::from_poly(&fi.poly, var);
        let mut cur = a;
        let mut j = 0u32;
        while !cur.is_zero() {
            let (qt, r) = cur.divrem(&base);
            if !r.is_zero() {
                terms.push(PartialFractionTerm {
                    factor: fi.poly.clone(),
                    order: fi.multiplicity - j,
                    numerator: r,
                });
            }
            cur = qt;
            j += 1;
        }
    }
    Ok(PartialFractions {
        var,
        polynomial,
        terms,
    })
}

/// Split `f` into its polynomial part in `var` and its proper part.
pub fn polynomial_and_proper(f: &RatFunc, var: usize) -> (FPoly, RatFunc) {
    let num = FPoly::from_poly(f.num(), var);
    let den = FPoly::from_poly(f.den(), var);
    let (qt, r) = num.divrem(&den);
    let proper = &r.to_ratfunc() / &den.to_ratfunc();
    (qt, proper)
}

/// True when `f` has no nonzero polynomial part and vanishes at infinity.
pub fn is_proper(f: &RatFunc, var: usize) -> bool {
    f.is_zero() || f.num().degree(var) < f.den().degree(var)
}
