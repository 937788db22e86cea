//! Exponential solutions of scalar differential operators in normal
//! coordinates (the map is `d/dt`).
//!
//! A candidate logarithmic derivative is `u = q(t) + sum_p e_p p'/p` with
//! `p` running over the irreducible factors of the leading coefficient,
//! `e_p` a local exponent at `p` (the least one of its class modulo the
//! integers), and `q` a polynomial read off the Newton polygon at
//! infinity.  At an irregular point with `p` linear, a polar part of order
//! two or more is added, found the same way after moving the point to
//! infinity.  A candidate survives when the twisted operator has a nonzero
//! polynomial solution.

use crate::config::SolverConfig;
use crate::delta::MapKind;
use crate::error::{Error, Result};
use crate::linalg::MatrixF;
use crate::ratfunc::{q, FPoly, Poly, RatFunc};

use super::operator::{
    complete_factors, local_exponents_derivation, polynomial_degree_bound, polynomial_solutions, roots_in_k,
    ScalarOperator,
};
use super::{classes_from_candidates, SolutionClass};

pub fn exponential_solutions(op: &ScalarOperator, t: usize, cfg: &SolverConfig) -> Result<Vec<SolutionClass>> {
    if op.map.kind() != MapKind::Derivation {
        return Err(Error::InvalidInput("exponential solutions need a derivation".into()));
    }
    let nv = op.nvars();
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
    // per finite singular point, the admissible local terms of `u` as
    // (term, part of the term kept in the certificate)
    let mut points: Vec<Vec<(RatFunc, RatFunc)>> = Vec::new();
    for (p, _) in complete_factors(&a[k], t, "leading coefficient")? {
        if p.degree(t) == 0 {
            continue;
        }
        let pr = RatFunc::from_poly(p.clone());
        let logd = &pr.derivative(t) / &pr;
        let loc = local_exponents_derivation(&a, &p, t);
        let polar = if loc.regular {
            vec![RatFunc::zero(nv)]
        } else if p.degree(t) == 1 {
            polar_parts(op, &p, t, cfg)?
        } else {
            return Err(Error::UnsupportedSingularity(format!(
                "irregular singular point at a factor of degree {}",
                p.degree(t)
            )));
        };
        let mut options = Vec::new();
        for v in polar {
            let exps = if v.is_zero() {
                loc.exponents.clone()
            } else {
                local_exponents_derivation(&op.twist(&v).polynomial_coeffs(), &p, t).exponents
            };
            for (e, integral) in class_representatives(&exps) {
                let term = &logd * &e;
                let kept = if integral { v.clone() } else { &v + &term };
                options.push((&v + &term, kept));
            }
        }
        if options.is_empty() {
            return Ok(vec![]);
        }
        points.push(options);
    }
    let mut candidates = Vec::new();
    for qpart in polynomial_parts(&a, t, cfg)? {
        let mut combo = vec![0usize; points.len()];
        loop {
            let mut u = qpart.clone();
            let mut folded = qpart.clone();
            for (i, options) in points.iter().enumerate() {
                let (term, kept) = &options[combo[i]];
                u = &u + term;
                folded = &folded + kept;
            }
            if has_polynomial_solution(op, &u, t, cfg)? && !candidates.contains(&folded) {
                candidates.push(folded);
            }
            if !advance(&mut combo, &points) {
                break;
            }
        }
    }
    classes_from_candidates(op, t, candidates, cfg)
}

/// Candidate polar parts of order at least two at the root `c` of a linear
/// `p`.  With `t = c + 1/s` the point moves to `s = infinity`, where the
/// polynomial parts `q(s)` give the polar parts `-q(s) s^2`.
fn polar_parts(op: &ScalarOperator, p: &Poly, t: usize, cfg: &SolverConfig) -> Result<Vec<RatFunc>> {
    let nv = op.nvars();
    let cs = p.coeffs_in(t);
    let c = -&RatFunc::from_poly(cs[0].clone()).checked_div(&RatFunc::from_poly(cs[1].clone()))?;
    let s = RatFunc::var(nv, t);
    let at = &c + &s.inv()?;
    // D_t = -s^2 D_s, and the coefficients evaluated at t = c + 1/s
    let minus_s2 = -&(&s * &s);
    let mut power = vec![RatFunc::one(nv)];
    let mut coeffs = vec![RatFunc::zero(nv); op.coeffs.len()];
    for (j, aj) in op.coeffs.iter().enumerate() {
        if j > 0 {
            let mut next = vec![RatFunc::zero(nv); power.len() + 1];
            for (i, ci) in power.iter().enumerate() {
                next[i] = &next[i] + &(&minus_s2 * &op.map.apply(ci));
                next[i + 1] = &next[i + 1] + &(&minus_s2 * ci);
            }
            power = next;
        }
        let aj = substitute_var(aj, t, &at)?;
        for (i, ci) in power.iter().enumerate() {
            coeffs[i] = &coeffs[i] + &(&aj * ci);
        }
    }
    let moved = ScalarOperator::new(op.map.clone(), coeffs)?;
    let back = (&s - &c).inv()?;
    polynomial_parts(&moved.polynomial_coeffs(), t, cfg)?
        .into_iter()
        .map(|q| substitute_var(&(&minus_s2 * &q), t, &back))
        .collect()
}

/// `f` with the variable `t` replaced by `g`.
fn substitute_var(f: &RatFunc, t: usize, g: &RatFunc) -> Result<RatFunc> {
    let eval = |p: &Poly| {
        let mut acc = RatFunc::zero(p.nvars());
        for c in p.coeffs_in(t).iter().rev() {
            acc = &(&acc * g) + &RatFunc::from_poly(c.clone());
        }
        acc
    };
    eval(f.num()).checked_div(&eval(f.den()))
}

fn advance<T>(combo: &mut [usize], points: &[Vec<T>]) -> bool {
    for i in 0..combo.len() {
        combo[i] += 1;
        if combo[i] < points[i].len() {
            return true;
        }
        combo[i] = 0;
    }
    false
}

/// The least exponent of each class modulo the integers, flagged when the
/// class is that of the integers themselves.
fn class_representatives(exps: &[RatFunc]) -> Vec<(RatFunc, bool)> {
    let mut reps: Vec<RatFunc> = Vec::new();
    for e in exps {
        let mut placed = false;
        for r in reps.iter_mut() {
            if let Some(d) = (e - &*r).constant_value() {
                if d.is_integer() {
                    if d < q(0) {
                        *r = e.clone();
                    }
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            reps.push(e.clone());
        }
    }
    reps.into_iter()
        .map(|r| {
            let integral = r.constant_value().is_some_and(|c| c.is_integer());
            (r, integral)
        })
        .collect()
}

fn has_polynomial_solution(op: &ScalarOperator, u: &RatFunc, t: usize, cfg: &SolverConfig) -> Result<bool> {
    let tw = op.twist(u);
    let Some(bound) = polynomial_degree_bound(&tw.polynomial_coeffs(), t, MapKind::Derivation) else {
        return Ok(false);
    };
    if bound as usize > cfg.max_degree {
        return Err(Error::DegreeBoundExceeded {
            bound,
            cap: cfg.max_degree,
            context: "polynomial factor of an exponential solution".into(),
        });
    }
    Ok(!polynomial_solutions(&tw, t, bound).is_empty())
}

/// Candidate polynomial parts `q`, as rational functions of `t`.
fn polynomial_parts(a: &[Poly], t: usize, cfg: &SolverConfig) -> Result<Vec<RatFunc>> {
    let nv = a[0].nvars();
    let pts: Vec<(i64, i64)> = a
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j as i64, c.degree(t) as i64))
        .collect();
    let mut degrees = vec![0i64];
    for (i, &(ji, di)) in pts.iter().enumerate() {
        for &(jj, dj) in &pts[i + 1..] {
            let num = di - dj;
            let den = jj - ji;
            if num > 0 && num % den == 0 {
                let d = num / den;
                let top = pts.iter().map(|(j, e)| e + j * d).max().expect("nonempty");
                let hits = pts.iter().filter(|(j, e)| e + j * d == top).count();
                if hits >= 2 && !degrees.contains(&d) {
                    degrees.push(d);
                }
            }
        }
    }
    degrees.sort();
    if let Some(&d) = degrees.last() {
        if d as usize > cfg.max_exp_degree {
            return Err(Error::DegreeBoundExceeded {
                bound: d,
                cap: cfg.max_exp_degree,
                context: "polynomial part of an exponential solution".into(),
            });
        }
    }
    let mut out = Vec::new();
    for d in degrees {
        let top = pts.iter().map(|(j, e)| e + j * d).max().expect("nonempty");
        // partial polynomial parts, highest coefficient first
        let mut partial: Vec<RatFunc> = vec![RatFunc::zero(nv)];
        for level in 0..=d {
            let mono = RatFunc::from_poly(Poly::monomial(nv, t, (d - level) as u32, q(1)));
            let mut next = Vec::new();
            for base in &partial {
                let cs = level_polynomial(a, base, &mono, t, top - level)?;
                let Some(roots) = roots_in_k(&cs, t) else {
                    return Err(Error::UnsupportedSingularity(
                        "coefficient of the exponential part at infinity is undetermined".into(),
                    ));
                };
                for r in roots {
                    if level == 0 && d > 0 && r.is_zero() {
                        continue;
                    }
                    next.push(base + &(&r * &mono));
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    Ok(out)
}

/// Coefficients in `X` of `[t^deg] sum_j a_j (base + X mono)^j`, found by
/// interpolation at `X = 0, ..., k`.
fn level_polynomial(a: &[Poly], base: &RatFunc, mono: &RatFunc, t: usize, deg: i64) -> Result<Vec<RatFunc>> {
    let nv = base.nvars();
    let k = a.len() - 1;
    let mut values = Vec::with_capacity(k + 1);
    for x in 0..=k {
        let u = base + &mono.scale(&q(x as i64));
        let mut acc = RatFunc::zero(nv);
        let mut pw = RatFunc::one(nv);
        for aj in a {
            acc = &acc + &(&RatFunc::from_poly(aj.clone()) * &pw);
            pw = &pw * &u;
        }
        let f = FPoly::from_ratfunc(&acc, t).expect("polynomial in t");
        values.push(if deg < 0 { RatFunc::zero(nv) } else { f.coeff(deg as usize) });
    }
    let vander = MatrixF::from_rows(
        (0..=k)
            .map(|x| (0..=k).map(|l| RatFunc::int(nv, (x as i64).pow(l as u32))).collect())
            .collect(),
        nv,
    );
    let sol = vander
        .solve(&MatrixF::column_vector(&values, nv))
        .ok_or_else(|| Error::InternalInconsistency("singular interpolation".into()))?;
    Ok(sol.col(0))
}
