//! Roots of `p(u)` in the field of the remaining variables.
//!
//! After making `p` squarefree and monic by `q(u) = lc^(d-1) p(u / lc)`,
//! every root of `q` is a polynomial of bounded total degree.  We
//! specialize the other variables at a point where `q` stays squarefree,
//! take the rational roots there, and lift each one degree by degree in the
//! shifted variables.  Candidates are verified exactly.

use num_traits::Zero;
use rand::Rng;

use super::gcd::{gcd_in, primitive_in, spec_rng};
use super::poly::{q, Poly, Q};
use super::qpoly::QPoly;
use super::ratfunc::RatFunc;

/// Distinct roots of `p` in `var` over the field of the other variables.
pub fn roots_in_field(p: &Poly, var: usize) -> Vec<RatFunc> {
    let nv = p.nvars();
    if p.degree(var) == 0 {
        return vec![];
    }
    let pp = primitive_in(p, var);
    let g = gcd_in(&pp, &pp.derivative(var), var);
    let f = pp.div_exact(&g).expect("gcd divides");
    let coeffs = f.coeffs_in(var);
    let d = coeffs.len() - 1;
    if d == 1 {
        let r = RatFunc::new(-&coeffs[0], coeffs[1].clone()).expect("nonzero leading coefficient");
        return vec![r];
    }
    let others: Vec<usize> = f.vars_used().into_iter().filter(|&v| v != var).collect();
    if others.is_empty() {
        return QPoly::from_poly(&f, var)
            .rational_roots()
            .into_iter()
            .map(|r| RatFunc::constant(nv, r))
            .collect();
    }
    let lc = coeffs[d].clone();
    // monic transform
    let mut qc: Vec<Poly> = Vec::with_capacity(d + 1);
    for (i, c) in coeffs.iter().enumerate() {
        if i == d {
            qc.push(Poly::one(nv));
        } else {
            qc.push(c * &lc.pow((d - 1 - i) as u32));
        }
    }
    let bound = qc[..d]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let k = (d - i) as u32;
            c.total_degree().div_ceil(k)
        })
        .max()
        .unwrap_or(0);

    let mut rng = spec_rng(0x7007 + var as u64);
    let mut point = vec![Q::zero(); nv];
    let mut special: Option<QPoly> = None;
    for attempt in 0..40 {
        let span = 20 + 10 * attempt;
        for &v in &others {
            point[v] = q(rng.gen_range(-span..=span));
        }
        let spec: Vec<Q> = qc
            .iter()
            .map(|c| {
                let mut s = c.clone();
                for &v in &others {
                    s = s.eval_var(v, &point[v]);
                }
                s.constant_value().expect("all other variables specialized")
            })
            .collect();
        let sp = QPoly::new(spec);
        if sp.gcd(&sp.derivative()).degree() == 0 {
            special = Some(sp);
            break;
        }
    }
    let special = special.expect("a squarefree specialization exists");
    let dspecial = special.derivative();

    // coefficients of q in the shifted variables w = x - point
    let shift: Vec<Q> = (0..nv)
        .map(|v| if others.contains(&v) { point[v].clone() } else { Q::zero() })
        .collect();
    let shifted: Vec<Poly> = qc.iter().map(|c| c.translate(&shift)).collect();
    let back: Vec<Q> = shift.iter().map(|s| -s).collect();

    let mut out = Vec::new();
    for u0 in special.rational_roots() {
        let slope = dspecial.eval(&u0);
        let mut s = Poly::constant(nv, u0.clone());
        for j in 1..=bound {
            let val = horner_truncated(&shifted, &s, j);
            let part = val.homogeneous_part(j);
            if !part.is_zero() {
                s = &s - &part.scale(&slope.recip());
            }
        }
        let r = s.translate(&back);
        if horner(&qc, &r).is_zero() {
            out.push(RatFunc::new(r, lc.clone()).expect("nonzero leading coefficient"));
        }
    }
    out.sort();
    out
}

fn horner(c: &[Poly], x: &Poly) -> Poly {
    let mut acc = Poly::zero(x.nvars());
    for ci in c.iter().rev() {
        acc = &(&acc * x) + ci;
    }
    acc
}

fn horner_truncated(c: &[Poly], x: &Poly, deg: u32) -> Poly {
    let mut acc = Poly::zero(x.nvars());
    for ci in c.iter().rev() {
        acc = &(&acc * x).truncate_total(deg) + &ci.truncate_total(deg);
    }
    acc
}
