//! Multivariate polynomial gcd.
//!
//! Cheap structural cases are handled first (constants, monomial content,
//! variables occurring on one side only, trial division); a specialization
//! test proves coprimality in the main variable; otherwise a subresultant
//! remainder sequence runs over the polynomial ring of the other variables.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{q, Exps, Poly, Q};
use super::qpoly::QPoly;

/// Greatest common divisor, normalized to lex-leading coefficient one.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars());
    }
    if a == b {
        return a.monic();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let common: Exps = ma.iter().zip(mb.iter()).map(|(x, y)| *x.min(y)).collect();
    let a1 = strip_monomial(a, &ma);
    let b1 = strip_monomial(b, &mb);
    let core = gcd_core(&a1, &b1);
    core.shift_exponents(&common).monic()
}

/// Gcd of several polynomials.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a Poly>>(nvars: usize, items: I) -> Poly {
    let mut g = Poly::zero(nvars);
    for p in items {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.nvars());
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &Poly, var: usize) -> Poly {
    if !p.involves(var) {
        return p.monic();
    }
    let cs = p.coeffs_in(var);
    // start from the sparsest coefficient
    let mut order: Vec<&Poly> = cs.iter().filter(|c| !c.is_zero()).collect();
    order.sort_by_key(|c| (c.len(), c.total_degree()));
    gcd_many(p.nvars(), order)
}

/// `p` divided by its content in `var`.
pub fn primitive_in(p: &Poly, var: usize) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides")
}

/// Gcd in `K[var]` with `K` the field of the other variables: the
/// multivariate gcd with its `var`-free content removed, normalized.
pub fn gcd_in(a: &Poly, b: &Poly, var: usize) -> Poly {
    let g = gcd(a, b);
    if g.is_zero() {
        return g;
    }
    primitive_in(&g, var).monic()
}

fn strip_monomial(p: &Poly, m: &Exps) -> Poly {
    if m.iter().all(|&e| e == 0) {
        return p.clone();
    }
    let nv = p.nvars();
    let terms = p.terms().iter().map(|(e, c)| {
        let ne: Exps = e.iter().zip(m.iter()).map(|(x, y)| x - y).collect();
        (ne, c.clone())
    });
    Poly::from_terms(nv, terms)
}

/// Neither argument has monomial content.
fn gcd_core(a: &Poly, b: &Poly) -> Poly {
    let nv = a.nvars();
    if a.is_constant() || b.is_constant() || a.is_monomial() || b.is_monomial() {
        return Poly::one(nv);
    }
    let va = a.vars_used();
    let vb = b.vars_used();
    // a variable present on one side only cannot occur in the gcd
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd(&content_in(a, v), b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd(a, &content_in(b, v));
    }
    // trial division by the smaller one
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if big.div_exact(small).is_some() {
        return small.monic();
    }
    if va.len() == 1 {
        let v = va[0];
        let g = QPoly::from_poly(a, v).gcd(&QPoly::from_poly(b, v));
        return g.to_poly(nv, v);
    }
    let main = *va
        .iter()
        .min_by_key(|&&v| (a.degree(v).max(b.degree(v)), v))
        .unwrap();
    if coprime_in(a, b, main) {
        return gcd(&content_in(a, main), &content_in(b, main));
    }
    let ca = content_in(a, main);
    let cb = content_in(b, main);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = subresultant_gcd(&pa, &pb, main);
    let pp = primitive_in(&g, main);
    (&gcd(&ca, &cb) * &pp).monic()
}

/// Deterministic evaluation points for specialization arguments.
pub(crate) fn spec_rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ salt)
}

fn specialize_except(p: &Poly, keep: usize, point: &[Q]) -> Poly {
    let mut r = p.clone();
    for (v, c) in point.iter().enumerate() {
        if v != keep {
            r = r.eval_var(v, c);
        }
    }
    r
}

/// True if a specialization proves that `a` and `b` have no common factor
/// involving `var`.  False means "unknown".
fn coprime_in(a: &Poly, b: &Poly, var: usize) -> bool {
    let nv = a.nvars();
    let la = a.lc_in(var);
    let lb = b.lc_in(var);
    let mut rng = spec_rng(var as u64);
    for _ in 0..3 {
        let point: Vec<Q> = (0..nv).map(|_| q(rng.gen_range(-97..=97))).collect();
        if la.eval(&point).is_zero() || lb.eval(&point).is_zero() {
            continue;
        }
        let sa = QPoly::from_poly(&specialize_except(a, var, &point), var);
        let sb = QPoly::from_poly(&specialize_except(b, var, &point), var);
        return sa.gcd(&sb).degree() == 0;
    }
    false
}

/// Pseudo-remainder of `a` by `b` in `var`.
pub fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r: Vec<Poly> = a.to_vec();
    if r.len() < b.len() {
        return r;
    }
    let mut steps = 0usize;
    let total = r.len() - db;
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let lr = r[k].clone();
        for x in r.iter_mut() {
            *x = &*x * &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = &lr * bj;
            r[k - db + j] = &r[k - db + j] - &t;
        }
        debug_assert!(r[k].is_zero());
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
        steps += 1;
    }
    if steps < total {
        let f = lb.pow((total - steps) as u32);
        for x in r.iter_mut() {
            *x = &*x * &f;
        }
    }
    r
}

fn subresultant_gcd(a: &Poly, b: &Poly, var: usize) -> Poly {
    let nv = a.nvars();
    let mut a = a.coeffs_in(var);
    let mut b = b.coeffs_in(var);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Poly::one(nv);
    let mut h = Poly::one(nv);
    loop {
        let d = (a.len() - b.len()) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            return Poly::from_coeffs(nv, var, &b);
        }
        if r.len() == 1 {
            return Poly::one(nv);
        }
        let div = &g * &h.pow(d);
        let nb: Vec<Poly> = r
            .iter()
            .map(|x| x.div_exact(&div).expect("subresultant division is exact"))
            .collect();
        a = std::mem::replace(&mut b, nb);
        g = a.last().unwrap().clone();
        h = if d == 0 {
            h
        } else {
            g.pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("subresultant division is exact")
        };
    }
}

/// Squarefree decomposition in `var` over the field of the other
/// variables: returns `(f_i, i)` with `p = unit * prod f_i^i`, each `f_i`
/// primitive in `var`, squarefree and of positive degree.
pub fn squarefree_decomposition(p: &Poly, var: usize) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if p.degree(var) == 0 {
        return out;
    }
    let pp = primitive_in(p, var);
    let dp = pp.derivative(var);
    let a0 = gcd_in(&pp, &dp, var);
    let mut b = pp.div_exact(&a0).expect("gcd divides");
    let c = dp.div_exact(&a0).expect("gcd divides derivative");
    let mut d = &c - &b.derivative(var);
    let mut i = 1u32;
    while b.degree(var) > 0 {
        let a = gcd_in(&b, &d, var);
        let nb = b.div_exact(&a).expect("gcd divides");
        let nc = d.div_exact(&a).expect("gcd divides");
        if a.degree(var) > 0 {
            out.push((a.monic(), i));
        }
        d = &nc - &nb.derivative(var);
        b = nb;
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::poly::Poly;

    fn v(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }
    fn c(n: usize, k: i64) -> Poly {
        Poly::constant(n, q(k))
    }

    #[test]
    fn univariate_cases() {
        let x = v(1, 0);
        let a = &x.pow(2) - &c(1, 1);
        let b = &(&x.pow(2) - &x.scale(&q(2))) + &c(1, 1);
        assert_eq!(gcd(&a, &b), &x - &c(1, 1));
        assert_eq!(gcd(&a, &Poly::zero(1)), a.monic());
    }

    #[test]
    fn multivariate_common_factor() {
        let (x, y, z) = (v(3, 0), v(3, 1), v(3, 2));
        let f = &(&x * &y) + &(&z - &c(3, 3));
        let g1 = &(&x.pow(2) + &y) - &z;
        let g2 = &(&y * &z) + &c(3, 1);
        let a = &f * &g1;
        let b = &f * &g2;
        assert_eq!(gcd(&a, &b), f.monic());
        assert!(gcd(&g1, &g2).is_one());
    }

    #[test]
    fn monomial_parts() {
        let (x, y) = (v(2, 0), v(2, 1));
        assert_eq!(gcd(&(&x * &y), &y.pow(2)), y);
        assert_eq!(gcd_in(&(&x * &y), &y.pow(2), 1), y);
        assert!(gcd_in(&(&x * &y), &x, 1).is_one());
    }

    #[test]
    fn squarefree() {
        let (n, x) = (v(2, 0), v(2, 1));
        let p = &(&n + &c(2, 1)).pow(2) * &(&n - &x);
        let sq = squarefree_decomposition(&p, 0);
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0], (&n - &x, 1));
        assert_eq!(sq[1], (&n + &c(2, 1), 2));
    }
}
