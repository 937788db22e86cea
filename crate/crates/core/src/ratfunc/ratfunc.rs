use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Poly, Q};
use crate::error::{Error, Result};

/// A reduced fraction of polynomials.  The denominator has lex-leading
/// coefficient one and is coprime to the numerator, so structural
/// equality is equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFunc {
        let nv = den.nvars();
        if num.is_zero() {
            return RatFunc::zero(nv);
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_sign(n, d)
    }

    /// Scale so that the denominator is lex-monic (coprimality assumed).
    fn normalize_sign(num: Poly, den: Poly) -> RatFunc {
        let lc = den.lc();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Trust that `num/den` is already reduced with monic denominator.
    pub(crate) fn from_parts_unchecked(num: Poly, den: Poly) -> RatFunc {
        debug_assert!(den.lc().is_one());
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let nv = p.nvars();
        RatFunc {
            num: p,
            den: Poly::one(nv),
        }
    }

    pub fn zero(nvars: usize) -> RatFunc {
        RatFunc::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> RatFunc {
        RatFunc::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Q) -> RatFunc {
        RatFunc::from_poly(Poly::constant(nvars, c))
    }

    pub fn int(nvars: usize, c: i64) -> RatFunc {
        RatFunc::constant(nvars, super::poly::q(c))
    }

    pub fn var(nvars: usize, i: usize) -> RatFunc {
        RatFunc::from_poly(Poly::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn involves(&self, var: usize) -> bool {
        self.num.involves(var) || self.den.involves(var)
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_sign(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, n: i32) -> Result<RatFunc> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let n = n as u32;
        Ok(Self::normalize_sign(self.num.pow(n), self.den.pow(n)))
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        self * &RatFunc::from_poly(p.clone())
    }

    pub fn div_poly(&self, p: &Poly) -> Result<RatFunc> {
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = gcd(&self.num, p);
        let n = self.num.div_exact(&g).expect("gcd divides");
        let pp = p.div_exact(&g).expect("gcd divides");
        Ok(Self::normalize_sign(n, &self.den * &pp))
    }

    /// Partial derivative with respect to one variable.
    pub fn derivative(&self, var: usize) -> RatFunc {
        if !self.involves(var) {
            return RatFunc::zero(self.nvars());
        }
        let dn = self.num.derivative(var);
        if !self.den.involves(var) {
            return RatFunc::from_parts_unchecked(dn, self.den.clone()).renormalize();
        }
        let dd = self.den.derivative(var);
        let g = gcd(&self.den, &dd);
        let dg = self.den.div_exact(&g).expect("gcd divides");
        let ddg = dd.div_exact(&g).expect("gcd divides");
        let num = &(&dn * &dg) - &(&self.num * &ddg);
        Self::reduce(num, &self.den * &dg)
    }

    /// `sum_v dir[v] * d/dx_v`
    pub fn directional_derivative(&self, dir: &[Q]) -> RatFunc {
        let active: Vec<usize> = (0..dir.len()).filter(|&v| !dir[v].is_zero()).collect();
        if active.iter().all(|&v| !self.involves(v)) {
            return RatFunc::zero(self.nvars());
        }
        if active.len() == 1 {
            return self.derivative(active[0]).scale(&dir[active[0]]);
        }
        let dn = self.num.directional_derivative(dir);
        let dd = self.den.directional_derivative(dir);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        let g = gcd(&self.den, &dd);
        let dg = self.den.div_exact(&g).expect("gcd divides");
        let ddg = dd.div_exact(&g).expect("gcd divides");
        let num = &(&dn * &dg) - &(&self.num * &ddg);
        Self::reduce(num, &self.den * &dg)
    }

    /// Substitute `x_v -> x_v + shift[v]`.  Translations keep lex-leading
    /// monomials and coprimality, so no renormalization is needed.
    pub fn translate(&self, shift: &[Q]) -> RatFunc {
        RatFunc {
            num: self.num.translate(shift),
            den: self.den.translate(shift),
        }
    }

    /// Substitution by an invertible change of variables (coprimality is
    /// preserved, only the leading coefficient may change).
    pub fn substitute_invertible(&self, forms: &[Option<Poly>]) -> RatFunc {
        Self::normalize_sign(self.num.substitute(forms), self.den.substitute(forms))
    }

    /// General polynomial substitution; `None` when the denominator
    /// vanishes.
    pub fn substitute(&self, forms: &[Option<Poly>]) -> Option<RatFunc> {
        let d = self.den.substitute(forms);
        if d.is_zero() {
            return None;
        }
        Some(Self::reduce(self.num.substitute(forms), d))
    }

    pub fn eval_var(&self, var: usize, value: &Q) -> Option<RatFunc> {
        if !self.involves(var) {
            return Some(self.clone());
        }
        let d = self.den.eval_var(var, value);
        if d.is_zero() {
            return None;
        }
        Some(Self::reduce(self.num.eval_var(var, value), d))
    }

    pub fn eval(&self, point: &[Q]) -> Option<Q> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    /// Re-establish the normal form after a structural edit.
    pub(crate) fn renormalize(self) -> RatFunc {
        Self::reduce(self.num, self.den)
    }

    /// Embed into a larger variable space.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> RatFunc {
        Self::reduce(self.num.remap(nvars, map), self.den.remap(nvars, map))
    }

    /// Render with the given variable names.
    pub fn to_string_with(&self, names: &[String]) -> String {
        super::print::ratfunc_to_string(self, names)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::reduce(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc {
                num: &(&self.num * &o.den) + &o.num,
                den: o.den.clone(),
            };
        }
        if o.den.is_one() {
            return RatFunc {
                num: &self.num + &(&o.num * &self.den),
                den: self.den.clone(),
            };
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            return RatFunc {
                num,
                den: &self.den * &o.den,
            };
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&o.num * &b1);
        if num.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides"),
            )
        };
        RatFunc::normalize_sign(num, &(&b1 * &d1) * &g)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = o.den.div_exact(&g1).expect("gcd divides");
        let c = o.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        RatFunc::normalize_sign(&a * &c, &b * &d)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use `checked_div` for a `Result`.
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o).expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.to_string_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::poly::q;

    fn v(i: usize) -> RatFunc {
        RatFunc::var(2, i)
    }
    fn c(k: i64) -> RatFunc {
        RatFunc::int(2, k)
    }

    #[test]
    fn spec_arith_examples() {
        let (x, y) = (v(0), v(1));
        let s = &c(1) / &x + &c(1) / &y;
        assert_eq!(s, (&x + &y) / (&x * &y));
        let p = (&(&x * &x) - &c(1)) / (&x - &c(1));
        assert_eq!(p, &x + &c(1));
        assert!((&x / &x).is_one());
        assert!(matches!(x.checked_div(&c(0)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn canonical_sign() {
        let (x, y) = (v(0), v(1));
        let a = &c(1) / &(&c(1) - &x);
        let b = &c(-1) / &(&x - &c(1));
        assert_eq!(a, b);
        assert!(a.den().lc().is_one());
        let t = (&x * &y.scale(&q(3))) / (&y.scale(&q(6)));
        assert_eq!(t, x.scale(&crate::ratfunc::poly::q_frac(1, 2)));
    }

    #[test]
    fn derivatives() {
        let x = v(0);
        let f = &c(1) / &(&x * &x);
        assert_eq!(f.derivative(0), &c(-2) / &(&(&x * &x) * &x));
        let g = &(&x * &v(1)) / &(&x + &c(1));
        let dir = [q(1), q(1)];
        let expect = g.derivative(0) + g.derivative(1);
        assert_eq!(g.directional_derivative(&dir), expect);
    }
}
