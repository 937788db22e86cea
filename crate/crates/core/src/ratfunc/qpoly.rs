//! Dense univariate polynomials over Q, plus rational root isolation by
//! p-adic lifting.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{Poly, Q};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    c: Vec<Q>,
}

impl QPoly {
    pub fn new(mut c: Vec<Q>) -> QPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn zero() -> QPoly {
        QPoly { c: vec![] }
    }

    pub fn constant(v: Q) -> QPoly {
        QPoly::new(vec![v])
    }

    /// The polynomial `x`.
    pub fn x() -> QPoly {
        QPoly::new(vec![Q::zero(), Q::one()])
    }

    /// Read a polynomial in which only `var` occurs.
    pub fn from_poly(p: &Poly, var: usize) -> QPoly {
        let mut c = vec![Q::zero(); p.degree(var) as usize + 1];
        for (e, x) in p.terms() {
            debug_assert!(e.iter().enumerate().all(|(i, &k)| i == var || k == 0));
            c[e[var] as usize] += x;
        }
        QPoly::new(c)
    }

    pub fn to_poly(&self, nvars: usize, var: usize) -> Poly {
        let mut acc = Poly::zero(nvars);
        for (i, x) in self.c.iter().enumerate() {
            acc = &acc + &Poly::monomial(nvars, var, i as u32, x.clone());
        }
        acc
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![Q::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in o.c.iter().enumerate() {
            c[i] += x;
        }
        QPoly::new(c)
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> QPoly {
        QPoly::new(self.c.iter().map(|x| x * s).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() < d.c.len() {
            return (QPoly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut quo = vec![Q::zero(); r.len() - dd];
        for i in (0..quo.len()).rev() {
            let f = &r[i + dd] * &inv;
            if !f.is_zero() {
                for (j, x) in d.c.iter().enumerate() {
                    r[i + j] -= &f * x;
                }
            }
            quo[i] = f;
        }
        r.truncate(dd);
        (QPoly::new(quo), QPoly::new(r))
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = if r.is_zero() { r } else { r.monic() };
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> QPoly {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Scale to coprime integer coefficients.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for x in &self.c {
            den = den.lcm(x.denom());
        }
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|x| (x * Q::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|x| x / &g).collect()
    }

    /// All distinct rational roots, sorted increasingly.
    pub fn rational_roots(&self) -> Vec<Q> {
        if self.degree() <= 0 {
            return vec![];
        }
        let mut f = self.squarefree_part();
        let mut roots = Vec::new();
        if f.c[0].is_zero() {
            roots.push(Q::zero());
            f = QPoly::new(f.c[1..].to_vec());
        }
        match f.degree() {
            d if d <= 0 => {}
            1 => roots.push(-&f.c[0] / &f.c[1]),
            _ => roots.extend(padic_roots(&f)),
        }
        roots.sort();
        roots
    }

    /// `p(t + h)`.
    pub fn translate(&self, h: &Q) -> QPoly {
        let step = QPoly::new(vec![h.clone(), Q::one()]);
        let mut acc = QPoly::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(&step).add(&QPoly::constant(c.clone()));
        }
        acc
    }

    /// The resultant, by the Euclidean algorithm.
    pub fn resultant(&self, o: &QPoly) -> Q {
        if self.is_zero() || o.is_zero() {
            return Q::zero();
        }
        let (da, db) = (self.degree(), o.degree());
        if db == 0 {
            return pow_q(&o.lc(), da as u32);
        }
        if da == 0 {
            return pow_q(&self.lc(), db as u32);
        }
        let r = self.divrem(o).1;
        if r.is_zero() {
            return Q::zero();
        }
        let sign = if (da * db) % 2 == 1 { -Q::one() } else { Q::one() };
        sign * pow_q(&o.lc(), (da - r.degree()) as u32) * o.resultant(&r)
    }

    /// The polynomial of least degree through `points` (distinct abscissae).
    pub fn interpolate(points: &[(Q, Q)]) -> QPoly {
        // Newton divided differences
        let n = points.len();
        let mut coef: Vec<Q> = points.iter().map(|(_, y)| y.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                coef[i] = (&coef[i] - &coef[i - 1]) / (&points[i].0 - &points[i - j].0);
            }
        }
        let mut acc = QPoly::zero();
        for i in (0..n).rev() {
            acc = acc
                .mul(&QPoly::new(vec![-points[i].0.clone(), Q::one()]))
                .add(&QPoly::constant(coef[i].clone()));
        }
        acc
    }

    /// Integer roots only.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        self.rational_roots()
            .into_iter()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
            .collect()
    }
}

fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| n > 1 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn mod_u64(x: &BigInt, p: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(p));
    m.to_u64().unwrap()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Gcd degree of two polynomials over Z/p.
fn gcd_degree_mod(a: &[u64], b: &[u64], p: u64) -> isize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        // a := a mod b
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let f = (*a.last().unwrap() as u128 * inv as u128 % p as u128) as u64;
            let off = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                let sub = (f as u128 * bj as u128 % p as u128) as u64;
                a[off + j] = (a[off + j] + p - sub) % p;
            }
            trim_mod(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() as isize - 1
}

fn eval_mod(c: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &k in c.iter().rev() {
        acc = ((acc as u128 * x as u128 + k as u128) % p as u128) as u64;
    }
    acc
}

fn eval_big(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for k in c.iter().rev() {
        acc = (acc * x + k).mod_floor(m);
    }
    acc
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Rational reconstruction of `u mod m` with numerator and denominator
/// bounded by sqrt(m/2).
fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Q::new(r1, t1))
}

/// Rational roots of a squarefree polynomial with nonzero constant term.
fn padic_roots(f: &QPoly) -> Vec<Q> {
    let ints = f.integer_coeffs();
    let lead = ints.last().unwrap().clone();
    let a0 = ints[0].clone();
    let df: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, x)| x * BigInt::from(i))
        .collect();
    let b = a0.abs().max(lead.abs());
    let target = BigInt::from(2) * &b * &b;
    for p in primes_from(101) {
        if mod_u64(&lead, p) == 0 {
            continue;
        }
        let fm: Vec<u64> = ints.iter().map(|x| mod_u64(x, p)).collect();
        let dm: Vec<u64> = df.iter().map(|x| mod_u64(x, p)).collect();
        if gcd_degree_mod(&fm, &dm, p) != 0 {
            continue;
        }
        let small: Vec<u64> = (0..p).filter(|&r| eval_mod(&fm, r, p) == 0).collect();
        let mut out = Vec::new();
        let pb = BigInt::from(p);
        for r in small {
            // Newton lifting, doubling the precision each step
            let mut m = pb.clone();
            let mut x = BigInt::from(r);
            while m <= target {
                m = &m * &m;
                let fx = eval_big(&ints, &x, &m);
                let dfx = eval_big(&df, &x, &m);
                let inv = match inv_mod(&dfx, &m) {
                    Some(v) => v,
                    None => break,
                };
                x = (&x - fx * inv).mod_floor(&m);
            }
            if let Some(cand) = rational_reconstruct(&x, &m) {
                if f.eval(&cand).is_zero() {
                    out.push(cand);
                }
            }
        }
        return out;
    }
    unreachable!("a squarefree polynomial stays squarefree modulo almost every prime")
}

/// Sign of a rational as -1, 0, 1.
pub fn sign(q: &Q) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::poly::{q, q_frac};

    fn qp(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn roots_of_split_cubic() {
        // (x-2)(x-3)(2x+5)
        let f = qp(&[-2, 1]).mul(&qp(&[-3, 1])).mul(&qp(&[5, 2]));
        assert_eq!(f.rational_roots(), vec![q_frac(-5, 2), q(2), q(3)]);
    }

    #[test]
    fn roots_with_multiplicity_and_zero() {
        let f = qp(&[0, 0, 1]).mul(&qp(&[1, 1])).mul(&qp(&[1, 1]));
        assert_eq!(f.rational_roots(), vec![q(-1), q(0)]);
        assert!(qp(&[1, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn large_roots() {
        let r = Q::new(BigInt::from(123456789i64), BigInt::from(1000003i64));
        let lin = QPoly::new(vec![-r.clone(), q(1)]);
        let f = lin.mul(&qp(&[7, 0, 3])).mul(&qp(&[-11, 13]));
        let roots = f.rational_roots();
        assert!(roots.contains(&r));
        assert!(roots.contains(&q_frac(11, 13)));
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn divrem_and_gcd() {
        let a = qp(&[-1, 0, 1]);
        let b = qp(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), qp(&[-1, 1]));
        let (quo, rem) = a.divrem(&qp(&[-1, 1]));
        assert_eq!(quo, qp(&[1, 1]));
        assert!(rem.is_zero());
    }
}

fn pow_q(b: &Q, e: u32) -> Q {
    let mut acc = Q::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}
