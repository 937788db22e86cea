//! The recursive solver.  Maps are processed one at a time: the first one
//! gives an ordinary system, and each further map either prunes a group
//! (its certificate cannot be extended) or turns it into a smaller system
//! over the constants of the maps seen so far.

use crate::config::SolverConfig;
use crate::delta::{ConstantField, DeltaMap, DeltaSet, MapKind, NormalFrame};
use crate::error::{Error, Result};
use crate::linalg::{linear_reduction, minimal_scalar_equation, reduce_with_zeros, MatrixF};
use crate::ratfunc::{roots_in_field, Poly, RatFunc};
use crate::scalar::operator::{clear_denominators, complete_factors};
use crate::scalar::{
    exponential_solutions, hypergeometric_solutions, rational_additive_solve, rational_multiplicative_solve,
    rational_solutions_matrix, ScalarOperator,
};
use crate::system::{
    associate_witness, map_of, verify_group, Certificate, HyperexpGroup, IntegrableSystem, Representation,
};

/// A value `r` for a new map `phi` making `base` extended by `phi: r`
/// a consistent certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCandidate {
    pub base: Certificate,
    pub map: String,
    pub value: RatFunc,
}

impl ExtensionCandidate {
    pub fn certificate(&self) -> Certificate {
        self.base.with(&self.map, self.value.clone())
    }
}

/// `U phi(D) = W D` over the constants of the maps already processed,
/// entries in invariant form; `map` is `phi` restricted to those constants.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    pub u: MatrixF,
    pub w: MatrixF,
    pub map: DeltaMap,
    pub constants: ConstantField,
}

/// Groups of one stage of the recursion, for the maps listed.
#[derive(Clone, Debug)]
pub struct Stage {
    pub maps: Vec<String>,
    pub groups: Vec<HyperexpGroup>,
}

/// Hyperexponential solutions of a system with a single map.
pub fn solve_ordinary(sys: &IntegrableSystem, cfg: &SolverConfig) -> Result<Representation> {
    let [map] = sys.delta().maps() else {
        return Err(Error::InvalidInput("the ordinary solver needs exactly one map".into()));
    };
    let groups = ordinary_groups(&sys.matrices()[0], map, cfg)?
        .into_iter()
        .map(|(r, v)| HyperexpGroup {
            cert: Certificate::from_pairs(vec![(map.name().to_string(), r)]),
            vectors: v,
        })
        .collect();
    Ok(Representation { groups })
}

/// `(certificate value, vectors)` for `phi(Z) = B Z`.
pub(crate) fn ordinary_groups(b: &MatrixF, map: &DeltaMap, cfg: &SolverConfig) -> Result<Vec<(RatFunc, MatrixF)>> {
    let n = b.rows();
    if n == 0 {
        return Ok(vec![]);
    }
    if map.is_trivial() {
        return eigen_groups(b, map);
    }
    let frame = NormalFrame::new(map);
    let t = frame.var();
    let bn = frame.forward_matrix(b);
    let mn = frame.normal_map(map);
    let groups = ordinary_normal(&bn, &mn, t, cfg.pivot.min(n - 1), cfg)?;
    Ok(groups
        .into_iter()
        .map(|(r, v)| (frame.backward(&r), frame.backward_matrix(&v)))
        .collect())
}

fn ordinary_normal(
    b: &MatrixF,
    m: &DeltaMap,
    t: usize,
    pivot: usize,
    cfg: &SolverConfig,
) -> Result<Vec<(RatFunc, MatrixF)>> {
    let n = b.rows();
    let nv = b.nvars();
    let eq = minimal_scalar_equation(b, m, pivot);
    let op = ScalarOperator::new(m.clone(), eq.coeffs.clone())?;
    let classes = match m.kind() {
        MapKind::Shift => hypergeometric_solutions(&op, t, cfg),
        MapKind::Derivation => exponential_solutions(&op, t, cfg),
    }
    .map_err(|e| e.within(&format!("scalar equation of order {} for '{}'", eq.order(), m.name())))?;
    let mut groups = Vec::new();
    for c in classes {
        let tw = twisted(b, m, &c.cert)?;
        let sols = rational_solutions_matrix(&tw, m, t, cfg)?;
        if !sols.is_empty() {
            groups.push((c.cert, MatrixF::from_cols(&sols, n, nv)));
        }
    }
    if eq.order() < n {
        // solutions whose pivot coordinate vanishes
        let red = reduce_with_zeros(b, m, &[pivot])?;
        if !red.is_empty() && red.p.rows() > 0 {
            let sub_pivot = cfg.pivot.min(red.p.rows() - 1);
            for (r, v) in ordinary_normal(&red.p, m, t, sub_pivot, cfg)? {
                groups.push((r, red.s.mul(&v)));
            }
        }
    }
    fuse_ordinary(groups, m)
}

/// `B - r I` (derivation) or `B / r` (shift): the system met by `W` when
/// `h W` solves `phi(Z) = B Z`.
fn twisted(b: &MatrixF, m: &DeltaMap, r: &RatFunc) -> Result<MatrixF> {
    match m.kind() {
        MapKind::Derivation => Ok(b.sub(&MatrixF::identity(b.rows(), b.nvars()).scale(r))),
        MapKind::Shift => Ok(b.scale(&r.inv()?)),
    }
}

/// A map acting trivially on the field: solutions are eigenvectors.
fn eigen_groups(b: &MatrixF, m: &DeltaMap) -> Result<Vec<(RatFunc, MatrixF)>> {
    let n = b.rows();
    let nv = b.nvars();
    // the characteristic polynomial in a spare slot
    let slot = nv;
    let embed: Vec<usize> = (0..nv).collect();
    let cs = b.charpoly();
    let mut p = Poly::zero(nv + 1);
    for (l, c) in clear_denominators(&cs).iter().enumerate() {
        p = &p + &(&c.remap(nv + 1, &embed) * &Poly::monomial(nv + 1, slot, l as u32, crate::ratfunc::q(1)));
    }
    let inverse: Vec<usize> = (0..=nv).map(|i| i.min(nv - 1)).collect();
    let mut out = Vec::new();
    for root in roots_in_field(&p, slot) {
        debug_assert!(!root.involves(slot));
        let r = root.remap(nv, &inverse[..nv + 1]);
        if m.is_shift() && r.is_zero() {
            continue;
        }
        let k = b.sub(&MatrixF::identity(n, nv).scale(&r)).nullspace();
        if !k.is_empty() {
            out.push((r, MatrixF::from_cols(&k, n, nv)));
        }
    }
    Ok(out)
}

fn fuse_ordinary(groups: Vec<(RatFunc, MatrixF)>, m: &DeltaMap) -> Result<Vec<(RatFunc, MatrixF)>> {
    let nv = m.nvars();
    let mut out: Vec<(RatFunc, MatrixF)> = Vec::with_capacity(groups.len());
    'next: for (r, v) in groups {
        for (r0, v0) in out.iter_mut() {
            let target = m.quotient(&r, r0)?;
            if let Some(p) = rational_multiplicative_solve(nv, &[(m.clone(), target)])? {
                *v0 = independent_union(v0, &v.scale(&p));
                continue 'next;
            }
        }
        out.push((r, v));
    }
    Ok(out)
}

/// `a` followed by the columns of `b` that enlarge its span.
fn independent_union(a: &MatrixF, b: &MatrixF) -> MatrixF {
    let all = a.hstack(b);
    all.select_cols(&all.independent_columns())
}

/// A certificate value for `phi` compatible with `base`, if one exists.
pub fn extend_certificate(
    delta: &DeltaSet,
    base: &Certificate,
    phi: &DeltaMap,
    cfg: &SolverConfig,
) -> Result<Option<ExtensionCandidate>> {
    let nv = delta.nvars();
    let mut targets = Vec::with_capacity(base.len());
    for (name, r) in base.entries() {
        let m = delta
            .get(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown map '{name}'")))?;
        let b = match (phi.kind(), m.kind()) {
            (MapKind::Derivation, MapKind::Derivation) => phi.apply(r),
            (MapKind::Derivation, MapKind::Shift) => phi.log_of(r)?,
            (MapKind::Shift, MapKind::Derivation) => &phi.apply(r) - r,
            (MapKind::Shift, MapKind::Shift) => phi.log_of(r)?,
        };
        targets.push((m.clone(), b));
    }
    let value = match phi.kind() {
        MapKind::Derivation => rational_additive_solve(nv, &targets, cfg)?,
        MapKind::Shift => rational_multiplicative_solve(nv, &targets)?,
    };
    Ok(value.map(|value| ExtensionCandidate {
        base: base.clone(),
        map: phi.name().to_string(),
        value,
    }))
}

/// Substitute `Z = h V c` into `phi(Z) = B Z` and split the result over a
/// basis of `F` over the constants `cf`.
pub fn substitute_and_extract(
    g: &HyperexpGroup,
    ext: &ExtensionCandidate,
    b_phi: &MatrixF,
    phi: &DeltaMap,
    cf: &ConstantField,
) -> Result<ReducedSystem> {
    let v = &g.vectors;
    let r = &ext.value;
    let (q, bk) = match phi.kind() {
        MapKind::Derivation => (v.clone(), b_phi.mul(v).sub(&v.scale(r)).sub(&phi.apply_matrix(v))),
        MapKind::Shift => (phi.apply_matrix(v).scale(r), b_phi.mul(v)),
    };
    let (n, s, nv) = (v.rows(), v.cols(), v.nvars());
    let mut fs: Vec<RatFunc> = q.entries().to_vec();
    fs.extend_from_slice(bk.entries());
    let dec = cf.decompose(&fs);
    let half = n * s;
    let mut u_rows = Vec::new();
    let mut w_rows = Vec::new();
    for layer in 0..dec.basis.len() {
        let coeff = |k: usize| dec.coeffs[k][layer].clone();
        let ul: Vec<RatFunc> = (0..half).map(coeff).collect();
        let wl: Vec<RatFunc> = (half..2 * half).map(coeff).collect();
        if ul.iter().chain(&wl).all(|x| x.is_zero()) {
            continue;
        }
        for i in 0..n {
            u_rows.push(ul[i * s..(i + 1) * s].to_vec());
            w_rows.push(wl[i * s..(i + 1) * s].to_vec());
        }
    }
    let u = MatrixF::from_rows(u_rows, nv);
    let w = MatrixF::from_rows(w_rows, nv);
    // rows implied by the others carry no information
    let keep = u.hstack(&w).transpose().independent_columns();
    Ok(ReducedSystem {
        u: u.select_rows(&keep),
        w: w.select_rows(&keep),
        map: cf.restrict(phi),
        constants: cf.clone(),
    })
}

/// Groups of the reduced system, as `(certificate value of g, G)` in
/// invariant form, together with the matrix lifting `G` to `D`.
fn solve_reduced(rs: &ReducedSystem, cfg: &SolverConfig) -> Result<Vec<(RatFunc, MatrixF)>> {
    if rs.u.cols() == 0 {
        return Ok(vec![]);
    }
    let red = linear_reduction(&rs.u, &rs.w, &rs.map)?;
    if red.is_empty() || red.p.rows() == 0 {
        return Ok(vec![]);
    }
    Ok(ordinary_groups(&red.p, &rs.map, cfg)?
        .into_iter()
        .map(|(r, g)| (r, red.s.mul(&g)))
        .collect())
}

/// The map order requested by `cfg`, defaulting to the system's order.
fn map_order(sys: &IntegrableSystem, cfg: &SolverConfig) -> Result<Vec<DeltaMap>> {
    let Some(names) = &cfg.order else {
        return Ok(sys.delta().maps().to_vec());
    };
    let mut out = Vec::with_capacity(names.len());
    for n in names {
        let m = sys
            .map(n)
            .ok_or_else(|| Error::InvalidInput(format!("unknown map '{n}' in the order")))?;
        if out.iter().any(|x: &DeltaMap| x.name() == n) {
            return Err(Error::InvalidInput(format!("map '{n}' repeated in the order")));
        }
        out.push(m.clone());
    }
    if out.len() != sys.delta().len() {
        return Err(Error::InvalidInput("the order must list every map".into()));
    }
    Ok(out)
}

/// A representation of all hyperexponential solutions of `sys`.
pub fn solve_recursive(sys: &IntegrableSystem, cfg: &SolverConfig) -> Result<Representation> {
    Ok(solve_with_trace(sys, cfg)?.0)
}

/// Like `solve_recursive`, also returning the groups after each stage.
pub fn solve_with_trace(sys: &IntegrableSystem, cfg: &SolverConfig) -> Result<(Representation, Vec<Stage>)> {
    let order = map_order(sys, cfg)?;
    let nv = sys.nvars();
    let delta = sys.delta();
    let first = &order[0];
    let b1 = sys.matrix(first.name()).expect("map has a matrix");
    let mut groups: Vec<HyperexpGroup> = ordinary_groups(b1, first, cfg)
        .map_err(|e| e.within(&format!("map '{}'", first.name())))?
        .into_iter()
        .map(|(r, v)| HyperexpGroup {
            cert: Certificate::from_pairs(vec![(first.name().to_string(), r)]),
            vectors: v,
        })
        .collect();
    let mut stages = vec![Stage {
        maps: vec![first.name().to_string()],
        groups: groups.clone(),
    }];
    for k in 1..order.len() {
        let phi = &order[k];
        let b_phi = sys.matrix(phi.name()).expect("map has a matrix");
        let cf = ConstantField::new(nv, &order[..k]);
        let mut next = Vec::new();
        for (gi, g) in groups.iter().enumerate() {
            let context = format!("map '{}', group {}", phi.name(), gi + 1);
            let Some(ext) = extend_certificate(delta, &g.cert, phi, cfg).map_err(|e| e.within(&context))? else {
                continue;
            };
            let rs = substitute_and_extract(g, &ext, b_phi, phi, &cf)?;
            for (gc, gm) in solve_reduced(&rs, cfg).map_err(|e| e.within(&context))? {
                let value = phi.combine(&ext.value, &cf.lift(&gc));
                let cols = g.vectors.mul(&cf.lift_matrix(&gm));
                let cols = cols.select_cols(&cols.independent_columns());
                next.push(HyperexpGroup {
                    cert: ext.base.with(phi.name(), value),
                    vectors: cols,
                });
            }
        }
        groups = fuse_groups(next, delta)?;
        stages.push(Stage {
            maps: order[..=k].iter().map(|m| m.name().to_string()).collect(),
            groups: groups.clone(),
        });
    }
    let groups: Vec<HyperexpGroup> = groups
        .into_iter()
        .map(|g| {
            let g = simplify_group(g, delta)?;
            Ok(HyperexpGroup {
                cert: g.cert.ordered(delta),
                vectors: g.vectors,
            })
        })
        .collect::<Result<_>>()?;
    for g in &groups {
        if !verify_group(sys, g)?.passed() {
            return Err(Error::InternalInconsistency("an assembled group fails verification".into()));
        }
    }
    Ok((Representation { groups }, stages))
}

fn certificate_size(c: &Certificate) -> usize {
    c.entries()
        .iter()
        .map(|(_, r)| r.num().len() + r.den().len() + (r.num().total_degree() + r.den().total_degree()) as usize)
        .sum()
}

/// Rescale the hyperexponential element of `g` by polynomial factors of its
/// own entries while that shrinks the certificate.  The solutions described
/// by the group do not change.
fn simplify_group(mut g: HyperexpGroup, delta: &DeltaSet) -> Result<HyperexpGroup> {
    let nv = delta.nvars();
    let mut sources: Vec<&Poly> = Vec::new();
    for (_, r) in g.cert.entries() {
        sources.extend([r.num(), r.den()]);
    }
    let entries = g.vectors.columns();
    for x in entries.iter().flatten() {
        sources.extend([x.num(), x.den()]);
    }
    let mut candidates: Vec<RatFunc> = Vec::new();
    for p in sources {
        for t in 0..nv {
            if p.degree(t) == 0 {
                continue;
            }
            let Ok(fs) = complete_factors(p, t, "normalization") else { continue };
            for (f, _) in fs {
                let f = RatFunc::from_poly(f);
                if f.constant_value().is_some() {
                    continue;
                }
                let known = candidates
                    .iter()
                    .any(|c| f.checked_div(c).map(|q| q.constant_value().is_some()).unwrap_or(false));
                if !known {
                    candidates.push(f);
                }
            }
        }
    }
    for _ in 0..16 {
        let mut best: Option<(usize, RatFunc, Certificate)> = None;
        for f in &candidates {
            for e in [1, -1] {
                let p = f.pow(e)?;
                let pairs = g
                    .cert
                    .entries()
                    .iter()
                    .map(|(name, _)| Ok((name.clone(), map_of(delta, name)?.cert_of(&p)?)))
                    .collect::<Result<Vec<_>>>()?;
                let c = g.cert.combine(&Certificate::from_pairs(pairs), delta)?;
                let size = certificate_size(&c);
                if size < best.as_ref().map_or(certificate_size(&g.cert), |b| b.0) {
                    best = Some((size, p, c));
                }
            }
        }
        let Some((_, p, c)) = best else { break };
        g.cert = c;
        g.vectors = g.vectors.scale(&p.inv()?);
    }
    Ok(g)
}

/// Merge groups whose certificates are associates.
fn fuse_groups(groups: Vec<HyperexpGroup>, delta: &DeltaSet) -> Result<Vec<HyperexpGroup>> {
    let mut out: Vec<HyperexpGroup> = Vec::with_capacity(groups.len());
    'next: for g in groups {
        for o in out.iter_mut() {
            if let Some(p) = associate_witness(delta, &g.cert, &o.cert)? {
                o.vectors = independent_union(&o.vectors, &g.vectors.scale(&p));
                continue 'next;
            }
        }
        out.push(g);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::{q, Vars};

    fn diag(v: &Vars, d: &[&str]) -> MatrixF {
        let e: Vec<RatFunc> = d.iter().map(|s| v.parse(s).unwrap()).collect();
        MatrixF::diagonal(&e, v.len())
    }

    #[test]
    fn trivial_systems() {
        let v = Vars::new(&["x", "y"]).unwrap();
        let cfg = SolverConfig::default();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("x", q(1))]).unwrap();
        let sys = IntegrableSystem::new(v.clone(), DeltaSet::new(2, vec![d]).unwrap(), vec![MatrixF::zeros(2, 2, 2)])
            .unwrap();
        let rep = solve_ordinary(&sys, &cfg).unwrap();
        assert_eq!(rep.len(), 1);
        assert!(rep.groups[0].cert.get("d").unwrap().is_zero());
        assert_eq!(rep.groups[0].vectors.rank(), 2);
    }

    #[test]
    fn diagonal_shift() {
        let v = Vars::new(&["x", "y"]).unwrap();
        let cfg = SolverConfig::default();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("x", q(1))]).unwrap();
        let sys =
            IntegrableSystem::new(v.clone(), DeltaSet::new(2, vec![s]).unwrap(), vec![diag(&v, &["2", "3"])]).unwrap();
        let rep = solve_ordinary(&sys, &cfg).unwrap();
        let mut certs: Vec<RatFunc> = rep.groups.iter().map(|g| g.cert.get("s").unwrap().clone()).collect();
        certs.sort();
        assert_eq!(certs, vec![RatFunc::int(2, 2), RatFunc::int(2, 3)]);
        for g in &rep.groups {
            assert!(verify_group(&sys, g).unwrap().passed());
        }
    }

    #[test]
    fn extension_examples() {
        let v = Vars::new(&["x", "n"]).unwrap();
        let cfg = SolverConfig::default();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("x", q(1))]).unwrap();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("n", q(1))]).unwrap();
        let delta = DeltaSet::new(2, vec![d.clone(), s.clone()]).unwrap();
        let base = Certificate::from_pairs(vec![("d".into(), v.parse("n").unwrap())]);
        assert!(extend_certificate(&delta, &base, &s, &cfg).unwrap().is_none());
        let base = Certificate::neutral(&[d.clone()]);
        let ext = extend_certificate(&delta, &base, &s, &cfg).unwrap().unwrap();
        assert!(ext.value.is_one());
        let base = Certificate::neutral(&[s]);
        let ext = extend_certificate(&delta, &base, &d, &cfg).unwrap().unwrap();
        assert!(ext.value.is_zero());
    }

    #[test]
    fn two_maps_diagonal() {
        // dx Z = diag(1, 0) Z, sn Z = diag(n, 2) Z: e^x Gamma(n) e1 and 2^n e2
        let v = Vars::new(&["x", "n"]).unwrap();
        let cfg = SolverConfig::default();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("x", q(1))]).unwrap();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("n", q(1))]).unwrap();
        let delta = DeltaSet::new(2, vec![d, s]).unwrap();
        let sys = IntegrableSystem::new(v.clone(), delta, vec![diag(&v, &["1", "0"]), diag(&v, &["n", "2"])]).unwrap();
        let rep = solve_recursive(&sys, &cfg).unwrap();
        assert_eq!(rep.len(), 2);
        let rev = SolverConfig {
            order: Some(vec!["s".into(), "d".into()]),
            ..SolverConfig::default()
        };
        let rep2 = solve_recursive(&sys, &rev).unwrap();
        assert!(crate::system::representations_equivalent(sys.delta(), &rep, &rep2).unwrap());
    }
}
