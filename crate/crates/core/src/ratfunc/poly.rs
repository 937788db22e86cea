//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are kept sorted in strictly decreasing lexicographic order of their
//! exponent vectors (variable 0 is the most significant), so the first term
//! is the lex-leading term and structural equality is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub type Q = BigRational;
pub type Exps = SmallVec<[u32; 6]>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Exps, Q)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(nvars);
        }
        Poly {
            nvars,
            terms: vec![(smallvec::smallvec![0; nvars], c)],
        }
    }

    pub fn var(nvars: usize, index: usize) -> Poly {
        Poly::monomial(nvars, index, 1, Q::one())
    }

    /// `c * x_index^exp`
    pub fn monomial(nvars: usize, index: usize, exp: u32, c: Q) -> Poly {
        assert!(index < nvars, "variable index out of range");
        if c.is_zero() {
            return Poly::zero(nvars);
        }
        let mut e: Exps = smallvec::smallvec![0; nvars];
        e[index] = exp;
        Poly {
            nvars,
            terms: vec![(e, c)],
        }
    }

    /// Build from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Exps, Q)>,
    {
        let mut v: Vec<(Exps, Q)> = terms.into_iter().collect();
        for (e, _) in &v {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
        }
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Exps, Q)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { nvars, terms: out }
    }

    fn from_map(nvars: usize, map: BTreeMap<Exps, Q>) -> Poly {
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exps, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self) -> Q {
        match self.terms.last() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => c.clone(),
            _ => Q::zero(),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&(Exps, Q)> {
        self.terms.first()
    }

    /// Lex-leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Q {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Q::zero)
    }

    pub fn degree(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    pub fn min_degree(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[var] > 0)
    }

    /// Indices of the variables that occur.
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.involves(v)).collect()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x * c))
                .collect(),
        }
    }

    /// Multiply by a monomial `x^shift` (exponent vector).
    pub fn shift_exponents(&self, shift: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let ne: Exps = e.iter().zip(shift).map(|(a, b)| a + b).collect();
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    /// Make the lex-leading coefficient one.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Positive rational `c` with `self / c` having coprime integer
    /// coefficients (sign taken from the leading coefficient).
    pub fn rational_content(&self) -> Q {
        if self.is_zero() {
            return Q::one();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut r = Q::new(num, den);
        if self.lc().is_negative() {
            r = -r;
        }
        r
    }

    /// Integer-coefficient primitive part with positive leading coefficient.
    pub fn primitive_q(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.rational_content().recip())
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients with respect to `var`: entry `i` multiplies `var^i` and
    /// does not involve `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let d = self.degree(var) as usize;
        let mut buckets: Vec<Vec<(Exps, Q)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[var] as usize;
            ne[var] = 0;
            buckets[k].push((ne, c.clone()));
        }
        if self.is_zero() {
            return vec![];
        }
        buckets
            .into_iter()
            .map(|b| Poly {
                nvars: self.nvars,
                // removing one coordinate from a lex-sorted list keeps the order
                terms: b,
            })
            .collect()
    }

    pub fn from_coeffs(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut all = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut ne = e.clone();
                ne[var] += i as u32;
                all.push((ne, x.clone()));
            }
        }
        Poly::from_terms(nvars, all)
    }

    /// Leading coefficient with respect to `var` (a polynomial free of `var`).
    pub fn lc_in(&self, var: usize) -> Poly {
        let d = self.degree(var);
        let terms: Vec<(Exps, Q)> = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] == d)
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[var] = 0;
                (ne, c.clone())
            })
            .collect();
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|(e, c)| {
                let mut ne = e.clone();
                let k = ne[var];
                ne[var] -= 1;
                (ne, c * Q::from_integer(BigInt::from(k)))
            });
        Poly::from_terms(self.nvars, terms)
    }

    /// `sum_v dir[v] * d/dx_v`
    pub fn directional_derivative(&self, dir: &[Q]) -> Poly {
        let mut acc = Poly::zero(self.nvars);
        for (v, c) in dir.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &self.derivative(v).scale(c);
            }
        }
        acc
    }

    /// Substitute `x_v -> x_v + shift[v]` for every variable.
    pub fn translate(&self, shift: &[Q]) -> Poly {
        let mut p = self.clone();
        for (v, s) in shift.iter().enumerate() {
            if !s.is_zero() && p.involves(v) {
                p = p.translate_var(v, s);
            }
        }
        p
    }

    fn translate_var(&self, var: usize, s: &Q) -> Poly {
        let d = self.degree(var) as usize;
        // binomial rows and powers of s
        let mut spow = vec![Q::one(); d + 1];
        for i in 1..=d {
            spow[i] = &spow[i - 1] * s;
        }
        let mut map: BTreeMap<Exps, Q> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut binom = BigInt::one();
            for j in (0..=k).rev() {
                // coefficient of x^j in (x+s)^k is C(k, j) s^(k-j)
                let mut ne = e.clone();
                ne[var] = j as u32;
                let add = c * &spow[k - j] * Q::from_integer(binom.clone());
                *map.entry(ne).or_insert_with(Q::zero) += add;
                if j > 0 {
                    binom = binom * BigInt::from(j) / BigInt::from(k - j + 1);
                }
            }
        }
        Poly::from_map(self.nvars, map)
    }

    /// Simultaneous substitution `x_v -> forms[v]` (when present).  Each
    /// form is a polynomial in the same variable space.
    pub fn substitute(&self, forms: &[Option<Poly>]) -> Poly {
        assert_eq!(forms.len(), self.nvars);
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); self.nvars];
        let mut acc: BTreeMap<Exps, Q> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut kept: Exps = smallvec::smallvec![0; self.nvars];
            let mut prod = Poly::constant(self.nvars, c.clone());
            for v in 0..self.nvars {
                let k = e[v] as usize;
                if k == 0 {
                    continue;
                }
                match &forms[v] {
                    None => kept[v] = k as u32,
                    Some(f) => {
                        let pw = &mut cache[v];
                        if pw.is_empty() {
                            pw.push(Poly::one(self.nvars));
                        }
                        while pw.len() <= k {
                            let next = &pw[pw.len() - 1] * f;
                            pw.push(next);
                        }
                        prod = &prod * &pw[k];
                    }
                }
            }
            for (pe, pc) in prod.terms {
                let ne: Exps = pe.iter().zip(kept.iter()).map(|(a, b)| a + b).collect();
                *acc.entry(ne).or_insert_with(Q::zero) += pc;
            }
        }
        Poly::from_map(self.nvars, acc)
    }

    /// Evaluate one variable at a rational value.
    pub fn eval_var(&self, var: usize, value: &Q) -> Poly {
        if !self.involves(var) {
            return self.clone();
        }
        let d = self.degree(var) as usize;
        let mut pw = vec![Q::one(); d + 1];
        for i in 1..=d {
            pw[i] = &pw[i - 1] * value;
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = e.clone();
            let k = ne[var] as usize;
            ne[var] = 0;
            (ne, c * &pw[k])
        });
        Poly::from_terms(self.nvars, terms)
    }

    /// Evaluate at a full point.
    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(point[v].clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dle, dlc) = d.terms[0].clone();
        if d.is_monomial() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                if e.iter().zip(dle.iter()).any(|(a, b)| a < b) {
                    return None;
                }
                let ne: Exps = e.iter().zip(dle.iter()).map(|(a, b)| a - b).collect();
                terms.push((ne, c / &dlc));
            }
            return Some(Poly {
                nvars: self.nvars,
                terms,
            });
        }
        // quick degree check
        for v in 0..self.nvars {
            if d.degree(v) > self.degree(v) {
                return None;
            }
        }
        let mut rem: BTreeMap<Exps, Q> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Exps, Q)> = Vec::new();
        while let Some((e, c)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(dle.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exps = e.iter().zip(dle.iter()).map(|(a, b)| a - b).collect();
            let qc = &c / &dlc;
            for (de, dc) in &d.terms {
                let ne: Exps = de.iter().zip(qe.iter()).map(|(a, b)| a + b).collect();
                let delta = dc * &qc;
                let remove = match rem.get_mut(&ne) {
                    Some(x) => {
                        *x -= delta;
                        x.is_zero()
                    }
                    None => {
                        rem.insert(ne.clone(), -delta);
                        false
                    }
                };
                if remove {
                    rem.remove(&ne);
                }
            }
            quot.push((qe, qc));
        }
        Some(Poly {
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Truncate to terms of total degree at most `deg`.
    pub fn truncate_total(&self, deg: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= deg)
                .cloned()
                .collect(),
        }
    }

    /// Homogeneous component of total degree `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == deg)
                .cloned()
                .collect(),
        }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Exps {
        let mut m: Exps = smallvec::smallvec![0; self.nvars];
        if let Some((first, _)) = self.terms.first() {
            m = first.clone();
            for (e, _) in &self.terms[1..] {
                for v in 0..self.nvars {
                    m[v] = m[v].min(e[v]);
                }
            }
        }
        m
    }

    /// Embed into a larger variable space, placing variable `i` at
    /// `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne: Exps = smallvec::smallvec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            (ne, c.clone())
        });
        Poly::from_terms(nvars, terms)
    }
}

fn merge(a: &Poly, b: &Poly, negate_b: bool) -> Poly {
    assert_eq!(a.nvars, b.nvars, "variable count mismatch");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        let (ea, ca) = &a.terms[i];
        let (eb, cb) = &b.terms[j];
        match ea.cmp(eb) {
            std::cmp::Ordering::Greater => {
                out.push((ea.clone(), ca.clone()));
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((eb.clone(), if negate_b { -cb } else { cb.clone() }));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((ea.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(
        b.terms[j..]
            .iter()
            .map(|(e, c)| (e.clone(), if negate_b { -c } else { c.clone() })),
    );
    Poly {
        nvars: a.nvars,
        terms: out,
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        merge(self, rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        merge(self, rhs, true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.nvars);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return rhs.shift_exponents(e).scale(c);
        }
        if rhs.is_monomial() {
            let (e, c) = &rhs.terms[0];
            return self.shift_exponents(e).scale(c);
        }
        let mut map: BTreeMap<Exps, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                match map.get_mut(&e) {
                    Some(x) => *x += c,
                    None => {
                        map.insert(e, c);
                    }
                }
            }
        }
        Poly::from_map(self.nvars, map)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Debug-style rendering with generic variable names `x0, x1, ...`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", crate::ratfunc::print::poly_to_string(self, &names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn ring_basics() {
        let a = &x(2, 0) + &Poly::one(2);
        let b = &x(2, 0) - &Poly::one(2);
        let p = &a * &b;
        assert_eq!(p, &x(2, 0).pow(2) - &Poly::one(2));
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!((&p + &Poly::one(2)).div_exact(&a), None);
    }

    #[test]
    fn translate_matches_substitution() {
        let p = &(&x(2, 0).pow(3) * &x(2, 1)) + &x(2, 0);
        let t = p.translate(&[q(2), q(0)]);
        let forms = vec![Some(&x(2, 0) + &Poly::constant(2, q(2))), None];
        assert_eq!(t, p.substitute(&forms));
    }

    #[test]
    fn coeffs_roundtrip() {
        let p = &(&x(3, 0).pow(2) * &x(3, 2)) + &(&x(3, 1) * &x(3, 0));
        let c = p.coeffs_in(0);
        assert_eq!(c.len(), 3);
        assert_eq!(Poly::from_coeffs(3, 0, &c), p);
    }
}
