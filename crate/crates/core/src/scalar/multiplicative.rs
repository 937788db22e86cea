//! Nonzero rational solutions of `delta_i(z) = b_i z`, `sigma_j(z) = b_j z`.
//!
//! The maps are handled one at a time.  A particular solution `z0` for the
//! first map leaves the freedom `z = z0 c` with `c` constant for that map;
//! the remaining equations, divided through by `z0`, must then have
//! constant right-hand sides and are solved on the constant field.

use crate::delta::{ConstantField, DeltaMap, MapKind, NormalFrame};
use crate::error::Result;
use crate::ratfunc::fpoly::polynomial_and_proper;
use crate::ratfunc::{FPoly, Poly, RatFunc};

use super::operator::{complete_factors, shift_distance, shift_vec};

/// One nonzero rational `z` with `phi(z) = b z` (derivations) or
/// `phi(z) = b z` (shifts) for every `(phi, b)`, if any exists.
pub fn rational_multiplicative_solve(nvars: usize, targets: &[(DeltaMap, RatFunc)]) -> Result<Option<RatFunc>> {
    let Some(((m0, g0), rest)) = targets.split_first() else {
        return Ok(Some(RatFunc::one(nvars)));
    };
    if m0.is_trivial() {
        if *g0 != m0.neutral() {
            return Ok(None);
        }
        return rational_multiplicative_solve(nvars, rest);
    }
    let frame = NormalFrame::new(m0);
    let t = frame.var();
    let g = frame.forward(g0);
    let z0n = match m0.kind() {
        MapKind::Derivation => log_derivative_preimage(&g, t)?,
        MapKind::Shift => shift_quotient_preimage(&g, t)?,
    };
    let Some(z0n) = z0n else { return Ok(None) };
    let z0 = frame.backward(&z0n);
    let cf = ConstantField::new(nvars, std::slice::from_ref(m0));
    let mut sub = Vec::with_capacity(rest.len());
    for (m, b) in rest {
        let residual = match m.kind() {
            MapKind::Derivation => b - &m.log_of(&z0)?,
            MapKind::Shift => b.checked_div(&m.log_of(&z0)?)?,
        };
        let Some(inv) = cf.to_invariant(&residual) else {
            return Ok(None);
        };
        sub.push((cf.restrict(m), inv));
    }
    Ok(rational_multiplicative_solve(nvars, &sub)?.map(|c| &z0 * &cf.lift(&c)))
}

/// `z` with `dz/dt = g z`: `g` must be proper with simple poles and
/// integer residues.
fn log_derivative_preimage(g: &RatFunc, t: usize) -> Result<Option<RatFunc>> {
    let nv = g.nvars();
    if g.is_zero() {
        return Ok(Some(RatFunc::one(nv)));
    }
    let (poly, proper) = polynomial_and_proper(g, t);
    if !poly.is_zero() || proper.is_zero() {
        return Ok(None);
    }
    let den = proper.den();
    let num = FPoly::from_poly(proper.num(), t);
    let mut z = RatFunc::one(nv);
    for (p, mult) in complete_factors(den, t, "log-derivative denominator")? {
        if p.degree(t) == 0 {
            continue;
        }
        if mult > 1 {
            return Ok(None);
        }
        let pf = FPoly::from_poly(&p, t);
        let d1 = FPoly::from_poly(&den.div_exact(&p).expect("factor divides"), t);
        let Some(inv) = d1.mul(&pf.derivative()).inv_mod(&pf) else {
            return Ok(None);
        };
        let res = num.mul(&inv).rem(&pf);
        if res.degree() > 0 {
            return Ok(None);
        }
        let Some(r) = res.coeff(0).constant_value() else {
            return Ok(None);
        };
        if !r.is_integer() {
            return Ok(None);
        }
        let e: i32 = match i32::try_from(r.to_integer()) {
            Ok(e) => e,
            Err(_) => return Ok(None),
        };
        z = &z * &RatFunc::from_poly(p).pow(e)?;
    }
    let check = &z.derivative(t) / &z;
    Ok((check == *g).then_some(z))
}

/// `z` with `z(t+1) = g z(t)`.
fn shift_quotient_preimage(g: &RatFunc, t: usize) -> Result<Option<RatFunc>> {
    let nv = g.nvars();
    if g.is_zero() {
        return Ok(None);
    }
    if g.is_one() {
        return Ok(Some(RatFunc::one(nv)));
    }
    if g.num().degree(t) != g.den().degree(t) {
        return Ok(None);
    }
    let mut entries: Vec<(Poly, i64)> = Vec::new();
    for (p, m) in complete_factors(g.num(), t, "shift quotient numerator")? {
        if p.degree(t) > 0 {
            entries.push((p, m as i64));
        }
    }
    for (p, m) in complete_factors(g.den(), t, "shift quotient denominator")? {
        if p.degree(t) > 0 {
            entries.push((p, -(m as i64)));
        }
    }
    // orbits under t -> t + 1: representative and (offset, exponent) pairs
    let mut orbits: Vec<(Poly, Vec<(i64, i64)>)> = Vec::new();
    'entries: for (p, e) in entries {
        for (rep, members) in orbits.iter_mut() {
            if let Some(h) = shift_distance(rep, &p, t) {
                members.push((h, e));
                continue 'entries;
            }
        }
        orbits.push((p, vec![(0, e)]));
    }
    let mut z = RatFunc::one(nv);
    for (rep, mut members) in orbits {
        members.sort();
        if members.iter().map(|(_, e)| e).sum::<i64>() != 0 {
            return Ok(None);
        }
        // z contains rep(t+h)^F_h with F_h = -sum_{j <= h} e_j
        let lo = members[0].0;
        let hi = members.last().expect("nonempty orbit").0;
        let mut f = 0i64;
        let mut idx = 0;
        for h in lo..hi {
            while idx < members.len() && members[idx].0 == h {
                f -= members[idx].1;
                idx += 1;
            }
            if f != 0 {
                let e = i32::try_from(f).map_err(|_| {
                    crate::Error::InternalInconsistency("shift exponent overflow".into())
                })?;
                let shifted = RatFunc::from_poly(rep.translate(&shift_vec(nv, t, h)));
                z = &z * &shifted.pow(e)?;
            }
        }
    }
    let check = z.translate(&shift_vec(nv, t, 1)).checked_div(&z)?;
    Ok((check == *g).then_some(z))
}
