//! Hypergeometric solutions of scalar recurrences (Petkovšek's search) in
//! normal coordinates: the map is `t -> t + 1` and the other slots are
//! constants.

use crate::config::SolverConfig;
use crate::delta::MapKind;
use crate::error::{Error, Result};
use crate::ratfunc::{Poly, RatFunc};

use super::operator::{
    complete_factors, polynomial_degree_bound, polynomial_solutions, roots_in_k, shift_vec, ScalarOperator,
};
use super::{classes_from_candidates, SolutionClass};

pub fn hypergeometric_solutions(op: &ScalarOperator, t: usize, cfg: &SolverConfig) -> Result<Vec<SolutionClass>> {
    if op.map.kind() != MapKind::Shift {
        return Err(Error::InvalidInput("hypergeometric solutions need a shift".into()));
    }
    let nv = op.nvars();
    let low = op.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero operator");
    if low > 0 {
        // y(t) = y'(t - low) where y' solves the operator without the zero tail
        let reduced = ScalarOperator::new(op.map.clone(), op.coeffs[low..].to_vec())?;
        let back = shift_vec(nv, t, -(low as i64));
        return Ok(hypergeometric_solutions(&reduced, t, cfg)?
            .into_iter()
            .map(|c| SolutionClass {
                cert: c.cert.translate(&back),
                multipliers: c.multipliers.iter().map(|w| w.translate(&back)).collect(),
            })
            .collect());
    }
    let k = op.order();
    if k == 0 {
        return Ok(vec![]);
    }
    if k == 1 {
        let cert = -&op.coeffs[0].checked_div(&op.coeffs[1])?;
        return Ok(vec![SolutionClass {
            cert,
            multipliers: vec![RatFunc::one(nv)],
        }]);
    }
    let a = op.polynomial_coeffs();
    let a_divs = monic_divisors(&a[0], t)?;
    let lead_back = a[k].translate(&shift_vec(nv, t, 1 - k as i64));
    let b_divs = monic_divisors(&lead_back, t)?;
    let mut candidates: Vec<RatFunc> = Vec::new();
    for big_a in &a_divs {
        let a_shifts: Vec<Poly> = (0..k).map(|j| big_a.translate(&shift_vec(nv, t, j as i64))).collect();
        for big_b in &b_divs {
            let b_shifts: Vec<Poly> = (0..k).map(|j| big_b.translate(&shift_vec(nv, t, j as i64))).collect();
            let p: Vec<Poly> = (0..=k)
                .map(|i| {
                    let mut acc = a[i].clone();
                    for s in &a_shifts[..i] {
                        acc = &acc * s;
                    }
                    for s in &b_shifts[i..] {
                        acc = &acc * s;
                    }
                    acc
                })
                .collect();
            let d = p.iter().filter(|x| !x.is_zero()).map(|x| x.degree(t)).max().unwrap_or(0);
            let lcs: Vec<RatFunc> = p
                .iter()
                .map(|x| {
                    if !x.is_zero() && x.degree(t) == d {
                        RatFunc::from_poly(x.lc_in(t))
                    } else {
                        RatFunc::zero(nv)
                    }
                })
                .collect();
            let Some(zs) = roots_in_k(&lcs, t) else { continue };
            for z in zs.into_iter().filter(|z| !z.is_zero()) {
                let mut zi = RatFunc::one(nv);
                let mut coeffs = Vec::with_capacity(k + 1);
                for pi in &p {
                    coeffs.push(&zi * &RatFunc::from_poly(pi.clone()));
                    zi = &zi * &z;
                }
                let red = ScalarOperator::new(op.map.clone(), coeffs)?;
                let Some(bound) = polynomial_degree_bound(&red.polynomial_coeffs(), t, MapKind::Shift) else {
                    continue;
                };
                if bound as usize > cfg.max_degree {
                    return Err(Error::DegreeBoundExceeded {
                        bound,
                        cap: cfg.max_degree,
                        context: "polynomial factor of a hypergeometric term".into(),
                    });
                }
                if polynomial_solutions(&red, t, bound).is_empty() {
                    continue;
                }
                let cert = &(&z * &RatFunc::from_poly(big_a.clone())) / &RatFunc::from_poly(big_b.clone());
                if !candidates.contains(&cert) {
                    candidates.push(cert);
                }
            }
        }
    }
    candidates.sort_by_key(|c| (c.num().total_degree() + c.den().total_degree(), c.num().len() + c.den().len()));
    classes_from_candidates(op, t, candidates, cfg)
}

/// Every divisor of `p` of positive or zero degree in `t`, built from its
/// irreducible factors.
fn monic_divisors(p: &Poly, t: usize) -> Result<Vec<Poly>> {
    let nv = p.nvars();
    let mut divs = vec![Poly::one(nv)];
    for (f, m) in complete_factors(p, t, "hypergeometric search")? {
        if f.degree(t) == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(divs.len() * (m as usize + 1));
        for d in &divs {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..m {
                cur = &cur * &f;
                next.push(cur.clone());
            }
        }
        divs = next;
    }
    divs.sort_by_key(|d| d.degree(t));
    Ok(divs)
}
