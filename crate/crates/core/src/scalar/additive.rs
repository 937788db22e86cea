//! Rational solutions of `delta_i(z) = b_i`, `sigma_j(z) - z = b_j`,
//! staged map by map like the multiplicative systems.

use crate::config::SolverConfig;
use crate::delta::{ConstantField, DeltaMap, MapKind, NormalFrame};
use crate::error::{Error, Result};
use crate::ratfunc::fpoly::polynomial_and_proper;
use crate::ratfunc::{q, FPoly, RatFunc};

use super::operator::{rational_solutions_scalar, shift_vec, ScalarOperator};

/// One rational `z` with `phi(z) = b` (derivations) or `phi(z) - z = b`
/// (shifts) for every `(phi, b)`, if any exists.
pub fn rational_additive_solve(
    nvars: usize,
    targets: &[(DeltaMap, RatFunc)],
    cfg: &SolverConfig,
) -> Result<Option<RatFunc>> {
    let Some(((m0, b0), rest)) = targets.split_first() else {
        return Ok(Some(RatFunc::zero(nvars)));
    };
    if m0.is_trivial() {
        if !b0.is_zero() {
            return Ok(None);
        }
        return rational_additive_solve(nvars, rest, cfg);
    }
    let frame = NormalFrame::new(m0);
    let t = frame.var();
    let b = frame.forward(b0);
    let z0n = match m0.kind() {
        MapKind::Derivation => rational_integral(&b, t)?,
        MapKind::Shift => rational_sum(&frame.normal_map(m0), &b, t, cfg)?,
    };
    let Some(z0n) = z0n else { return Ok(None) };
    let z0 = frame.backward(&z0n);
    let cf = ConstantField::new(nvars, std::slice::from_ref(m0));
    let mut sub = Vec::with_capacity(rest.len());
    for (m, b) in rest {
        let residual = b - &difference(m, &z0);
        let Some(inv) = cf.to_invariant(&residual) else {
            return Ok(None);
        };
        sub.push((cf.restrict(m), inv));
    }
    Ok(rational_additive_solve(nvars, &sub, cfg)?.map(|c| &z0 + &cf.lift(&c)))
}

/// `delta(z)` or `sigma(z) - z`.
pub fn difference(m: &DeltaMap, z: &RatFunc) -> RatFunc {
    match m.kind() {
        MapKind::Derivation => m.apply(z),
        MapKind::Shift => &m.apply(z) - z,
    }
}

/// A rational antiderivative of `g` in `t`, if one exists.
pub fn rational_integral(g: &RatFunc, t: usize) -> Result<Option<RatFunc>> {
    let (poly, proper) = polynomial_and_proper(g, t);
    let mut acc = integrate_polynomial(&poly).to_ratfunc();
    if !proper.is_zero() {
        let a = FPoly::from_poly(proper.num(), t);
        let d = FPoly::from_poly(proper.den(), t);
        let (rational, rest_num, rest_den) = hermite_reduce(a, d)?;
        acc = &acc + &rational;
        let rest = &rest_num.to_ratfunc() / &rest_den.to_ratfunc();
        let (p2, proper2) = polynomial_and_proper(&rest, t);
        if !proper2.is_zero() {
            return Ok(None);
        }
        acc = &acc + &integrate_polynomial(&p2).to_ratfunc();
    }
    if acc.derivative(t) != *g {
        return Err(Error::InternalInconsistency("rational integral does not verify".into()));
    }
    Ok(Some(acc))
}

fn integrate_polynomial(p: &FPoly) -> FPoly {
    let nv = p.nvars();
    let mut c = vec![RatFunc::zero(nv)];
    for (i, x) in p.coeffs().iter().enumerate() {
        c.push(x.scale(&q(i as i64 + 1).recip()));
    }
    FPoly::new(nv, p.var(), c)
}

fn exact_div(a: &FPoly, b: &FPoly) -> Result<FPoly> {
    let (qt, r) = a.divrem(b);
    if !r.is_zero() {
        return Err(Error::InternalInconsistency("inexact polynomial division".into()));
    }
    Ok(qt)
}

/// `(s, t)` with `s a + t b = c` and `deg s < deg b`, for coprime `a, b`.
fn solve_bezout(a: &FPoly, b: &FPoly, c: &FPoly) -> Result<(FPoly, FPoly)> {
    let (g, s, _) = a.ext_gcd(b);
    if g.degree() != 0 {
        return Err(Error::InternalInconsistency("Bezout operands are not coprime".into()));
    }
    let s = s.mul(c).scale(&g.lc().inv()?).rem(b);
    let t = exact_div(&c.sub(&s.mul(a)), b)?;
    Ok((s, t))
}

/// Hermite reduction: `int A/D = g + int A'/D*` with `D*` squarefree.
fn hermite_reduce(mut a: FPoly, d: FPoly) -> Result<(RatFunc, FPoly, FPoly)> {
    let nv = a.nvars();
    let mut g = RatFunc::zero(nv);
    let mut dm = d.gcd(&d.derivative());
    let ds = exact_div(&d, &dm)?;
    while dm.degree() > 0 {
        let dm2 = dm.gcd(&dm.derivative());
        let dms = exact_div(&dm, &dm2)?;
        let lhs = exact_div(&ds.mul(&dm.derivative()), &dm)?.scale(&RatFunc::int(nv, -1));
        let (b, c) = solve_bezout(&lhs, &dms, &a)?;
        a = c.sub(&exact_div(&b.derivative().mul(&ds), &dms)?);
        g = &g + &(&b.to_ratfunc() / &dm.to_ratfunc());
        dm = dm2;
    }
    Ok((g, a, ds))
}

/// A rational `z` with `z(t+1) - z(t) = b`, from the rational solutions of
/// the homogeneous second-order operator annihilating such `z`.
fn rational_sum(map: &DeltaMap, b: &RatFunc, t: usize, cfg: &SolverConfig) -> Result<Option<RatFunc>> {
    let nv = b.nvars();
    if b.is_zero() {
        return Ok(Some(RatFunc::zero(nv)));
    }
    let b1 = b.translate(&shift_vec(nv, t, 1));
    let i0 = b.inv()?;
    let i1 = b1.inv()?;
    let op = ScalarOperator::new(map.clone(), vec![i0.clone(), -&(&i0 + &i1), i1])?;
    for w in rational_solutions_scalar(&op, t, cfg.max_degree, cfg.max_dispersion)? {
        let c = difference(map, &w).checked_div(b)?;
        if !c.is_zero() {
            let z = w.checked_div(&c)?;
            debug_assert_eq!(difference(map, &z), *b);
            return Ok(Some(z));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::Vars;

    fn solve(v: &Vars, ts: &[(DeltaMap, &str)]) -> Option<RatFunc> {
        let targets: Vec<(DeltaMap, RatFunc)> =
            ts.iter().map(|(m, b)| (m.clone(), v.parse(b).unwrap())).collect();
        rational_additive_solve(v.len(), &targets, &SolverConfig::default()).unwrap()
    }

    #[test]
    fn single_map_examples() {
        let v = Vars::new(&["x", "n", "y"]).unwrap();
        let dx = DeltaMap::from_pairs("dx", MapKind::Derivation, &v, &[("x", q(1))]).unwrap();
        let sn = DeltaMap::from_pairs("sn", MapKind::Shift, &v, &[("n", q(1))]).unwrap();
        assert_eq!(solve(&v, &[(dx.clone(), "2*x")]), Some(v.parse("x^2").unwrap()));
        assert_eq!(solve(&v, &[(sn.clone(), "1")]), Some(v.parse("n").unwrap()));
        assert_eq!(solve(&v, &[(dx.clone(), "1/x")]), None);
        let z = solve(&v, &[(dx.clone(), "-2*y/(x+y)^3 + 1")]).unwrap();
        assert_eq!(dx.apply(&z), v.parse("-2*y/(x+y)^3 + 1").unwrap());
        let z = solve(&v, &[(sn.clone(), "1/(n*(n+1))")]).unwrap();
        assert_eq!(difference(&sn, &z), v.parse("1/(n*(n+1))").unwrap());
        assert_eq!(solve(&v, &[(sn, "1/n")]), None);
    }

    #[test]
    fn staged_maps() {
        let v = Vars::new(&["x", "y"]).unwrap();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("x", q(1))]).unwrap();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("x", q(1)), ("y", q(1))]).unwrap();
        // z = x*y + y^2
        let z0 = v.parse("x*y + y^2").unwrap();
        let z = solve(&v, &[(s.clone(), &v.show(&difference(&s, &z0))), (d.clone(), &v.show(&d.apply(&z0)))]).unwrap();
        assert!((&z - &z0).is_constant());
        assert_eq!(solve(&v, &[(s, "y"), (d, "1")]), None);
    }
}
