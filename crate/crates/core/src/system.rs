//! Structure matrices of Laurent-Ore modules, their associated first-order
//! systems, certificates of hyperexponential elements and the exact
//! verification of solution groups.

use crate::delta::{DeltaMap, DeltaSet, MapKind};
use crate::error::{Error, Result};
use crate::linalg::MatrixF;
use crate::ratfunc::{RatFunc, Vars};
use crate::scalar::rational_multiplicative_solve;

/// The values `phi(h)/h` (shifts) or `delta(h)/h` (derivations) of a
/// hyperexponential element `h`, one per map, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Certificate {
    entries: Vec<(String, RatFunc)>,
}

impl Certificate {
    pub fn new() -> Certificate {
        Certificate::default()
    }

    pub fn from_pairs(entries: Vec<(String, RatFunc)>) -> Certificate {
        Certificate { entries }
    }

    /// The certificate of `1` for the given maps.
    pub fn neutral(maps: &[DeltaMap]) -> Certificate {
        Certificate {
            entries: maps.iter().map(|m| (m.name().to_string(), m.neutral())).collect(),
        }
    }

    pub fn entries(&self) -> &[(String, RatFunc)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&RatFunc> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    /// Set the value for `name`, replacing an existing one.
    pub fn with(&self, name: &str, value: RatFunc) -> Certificate {
        let mut entries = self.entries.clone();
        match entries.iter_mut().find(|(n, _)| n == name) {
            Some(e) => e.1 = value,
            None => entries.push((name.to_string(), value)),
        }
        Certificate { entries }
    }

    /// Entries reordered to follow `delta`, dropping unknown names.
    pub fn ordered(&self, delta: &DeltaSet) -> Certificate {
        Certificate {
            entries: delta
                .maps()
                .iter()
                .filter_map(|m| self.get(m.name()).map(|v| (m.name().to_string(), v.clone())))
                .collect(),
        }
    }

    /// The certificate of the product of the two elements.
    pub fn combine(&self, other: &Certificate, delta: &DeltaSet) -> Result<Certificate> {
        let mut out = self.clone();
        for (name, v) in &other.entries {
            let m = map_of(delta, name)?;
            let value = match self.get(name) {
                Some(a) => m.combine(a, v),
                None => v.clone(),
            };
            out = out.with(name, value);
        }
        Ok(out)
    }
}

pub(crate) fn map_of<'a>(delta: &'a DeltaSet, name: &str) -> Result<&'a DeltaMap> {
    delta
        .get(name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown map '{name}'")))
}

/// Hyperexponential solutions `h V c`, `c` constant, with `h` given by its
/// certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperexpGroup {
    pub cert: Certificate,
    pub vectors: MatrixF,
}

/// Groups whose certificates are pairwise inequivalent; every
/// hyperexponential solution lies in exactly one of them.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Representation {
    pub groups: Vec<HyperexpGroup>,
}

impl Representation {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// `delta_i(Z) = B_i Z` and `sigma_j(Z) = B_j Z`, one matrix per map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrableSystem {
    vars: Vars,
    delta: DeltaSet,
    matrices: Vec<MatrixF>,
}

impl IntegrableSystem {
    /// Checks shapes, invertibility of shift matrices and integrability.
    pub fn new(vars: Vars, delta: DeltaSet, matrices: Vec<MatrixF>) -> Result<IntegrableSystem> {
        let sys = IntegrableSystem::new_unchecked(vars, delta, matrices)?;
        check_integrability(&sys.delta, &sys.matrices)?;
        Ok(sys)
    }

    /// Checks shapes and invertibility only.
    pub fn new_unchecked(vars: Vars, delta: DeltaSet, matrices: Vec<MatrixF>) -> Result<IntegrableSystem> {
        check_shapes(&vars, &delta, &matrices)?;
        for (m, b) in delta.maps().iter().zip(&matrices) {
            if m.is_shift() && b.det().is_zero() {
                return Err(Error::InvalidInput(format!("matrix of shift '{}' is singular", m.name())));
            }
        }
        Ok(IntegrableSystem { vars, delta, matrices })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn delta(&self) -> &DeltaSet {
        &self.delta
    }

    pub fn matrices(&self) -> &[MatrixF] {
        &self.matrices
    }

    pub fn dim(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.rows())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn matrix(&self, name: &str) -> Option<&MatrixF> {
        self.delta.position(name).map(|i| &self.matrices[i])
    }

    pub fn map(&self, name: &str) -> Option<&DeltaMap> {
        self.delta.get(name)
    }

    /// The subsystem of the named maps, in the given order.
    pub fn subsystem(&self, names: &[&str]) -> Result<IntegrableSystem> {
        let mut maps = Vec::new();
        let mut mats = Vec::new();
        for n in names {
            let i = self
                .delta
                .position(n)
                .ok_or_else(|| Error::InvalidInput(format!("unknown map '{n}'")))?;
            maps.push(self.delta.maps()[i].clone());
            mats.push(self.matrices[i].clone());
        }
        Ok(IntegrableSystem {
            vars: self.vars.clone(),
            delta: DeltaSet::new(self.vars.len(), maps)?,
            matrices: mats,
        })
    }
}

fn check_shapes(vars: &Vars, delta: &DeltaSet, matrices: &[MatrixF]) -> Result<()> {
    if delta.nvars() != vars.len() {
        return Err(Error::InvalidInput("maps and variables disagree".into()));
    }
    if matrices.len() != delta.len() {
        return Err(Error::InvalidInput("need exactly one matrix per map".into()));
    }
    let n = matrices.first().map_or(0, |m| m.rows());
    for (m, b) in delta.maps().iter().zip(matrices) {
        if b.rows() != n || b.cols() != n {
            return Err(Error::InvalidInput(format!(
                "matrix of '{}' is {}x{}, expected {n}x{n}",
                m.name(),
                b.rows(),
                b.cols()
            )));
        }
    }
    Ok(())
}

/// The compatibility residual of two equations of a first-order system;
/// zero exactly when the pair is integrable.
pub fn integrability_residual(mi: &DeltaMap, bi: &MatrixF, mj: &DeltaMap, bj: &MatrixF) -> MatrixF {
    use MapKind::*;
    match (mi.kind(), mj.kind()) {
        (Derivation, Derivation) => mi
            .apply_matrix(bj)
            .add(&bj.mul(bi))
            .sub(&mj.apply_matrix(bi))
            .sub(&bi.mul(bj)),
        (Derivation, Shift) => mi.apply_matrix(bj).add(&bj.mul(bi)).sub(&mj.apply_matrix(bi).mul(bj)),
        (Shift, Derivation) => mj.apply_matrix(bi).add(&bi.mul(bj)).sub(&mi.apply_matrix(bj).mul(bi)),
        (Shift, Shift) => mi.apply_matrix(bj).mul(bi).sub(&mj.apply_matrix(bi).mul(bj)),
    }
}

/// Fails with the first non-integrable pair in map order.
pub fn check_integrability(delta: &DeltaSet, matrices: &[MatrixF]) -> Result<()> {
    let maps = delta.maps();
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            let r = integrability_residual(&maps[i], &matrices[i], &maps[j], &matrices[j]);
            if !r.is_zero() {
                return Err(Error::NotIntegrable {
                    first: maps[i].name().to_string(),
                    second: maps[j].name().to_string(),
                    residual: Box::new(r),
                });
            }
        }
    }
    Ok(())
}

/// The action `d_i (e_1, ..., e_n)^T = A_i (e_1, ..., e_n)^T` of the
/// operators on a basis of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMatrices {
    vars: Vars,
    delta: DeltaSet,
    matrices: Vec<MatrixF>,
}

impl StructureMatrices {
    pub fn new(vars: Vars, delta: DeltaSet, matrices: Vec<MatrixF>) -> Result<StructureMatrices> {
        check_shapes(&vars, &delta, &matrices)?;
        for (m, a) in delta.maps().iter().zip(&matrices) {
            if m.is_shift() && a.det().is_zero() {
                return Err(Error::InvalidInput(format!(
                    "structure matrix of shift '{}' is singular",
                    m.name()
                )));
            }
        }
        Ok(StructureMatrices { vars, delta, matrices })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn delta(&self) -> &DeltaSet {
        &self.delta
    }

    pub fn matrices(&self) -> &[MatrixF] {
        &self.matrices
    }

    /// `-A^T` for derivations and `(A^-1)^T` for shifts, checked for
    /// integrability.
    pub fn associated_system(&self) -> Result<IntegrableSystem> {
        let mut mats = Vec::with_capacity(self.matrices.len());
        for (m, a) in self.delta.maps().iter().zip(&self.matrices) {
            mats.push(match m.kind() {
                MapKind::Derivation => a.transpose().scale_q(&-crate::ratfunc::q(1)),
                MapKind::Shift => a.inverse()?.transpose(),
            });
        }
        IntegrableSystem::new(self.vars.clone(), self.delta.clone(), mats)
    }

    /// Eigenvalues `f_i` with `d_i(u) = f_i u` when `F u` is a submodule.
    pub fn submodule_certificate(&self, u: &[RatFunc]) -> Result<Option<Vec<(String, RatFunc)>>> {
        let Some(k) = u.iter().position(|x| !x.is_zero()) else {
            return Err(Error::InvalidInput("zero generator".into()));
        };
        let mut out = Vec::with_capacity(self.delta.len());
        for (m, a) in self.delta.maps().iter().zip(&self.matrices) {
            let at = a.transpose();
            let v = match m.kind() {
                MapKind::Derivation => {
                    let du = m.apply_vec(u);
                    let au = at.mul_vec(u);
                    du.iter().zip(&au).map(|(x, y)| x + y).collect::<Vec<_>>()
                }
                MapKind::Shift => at.mul_vec(&m.apply_vec(u)),
            };
            let f = v[k].checked_div(&u[k])?;
            if v.iter().zip(u).any(|(vi, ui)| *vi != &f * ui) {
                return Ok(None);
            }
            out.push((m.name().to_string(), f));
        }
        Ok(Some(out))
    }
}

/// A residual of the group check: column `column` fails for `map`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnResidual {
    pub map: String,
    pub column: usize,
    pub residual: Vec<RatFunc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCheck {
    pub residuals: Vec<ColumnResidual>,
    pub full_rank: bool,
    /// Scalar compatibility of the certificate values.
    pub certificate_ok: bool,
}

impl GroupCheck {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty() && self.full_rank && self.certificate_ok
    }
}

/// Exact check that every column `W` satisfies `delta(W) = B W - r W` and
/// `sigma(W) = B W / r` for each map named by the certificate.
pub fn verify_group(sys: &IntegrableSystem, g: &HyperexpGroup) -> Result<GroupCheck> {
    let mut residuals = Vec::new();
    let mut certificate_ok = true;
    for (name, r) in g.cert.entries() {
        let m = map_of(sys.delta(), name)?;
        let b = sys.matrix(name).expect("map has a matrix");
        if m.is_shift() && r.is_zero() {
            certificate_ok = false;
            continue;
        }
        for (j, w) in g.vectors.columns().iter().enumerate() {
            let bw = b.mul_vec(w);
            let res: Vec<RatFunc> = match m.kind() {
                MapKind::Derivation => {
                    let dw = m.apply_vec(w);
                    dw.iter().zip(&bw).zip(w).map(|((d, b), x)| &(d - b) + &(r * x)).collect()
                }
                MapKind::Shift => {
                    let sw = m.apply_vec(w);
                    let inv = r.inv()?;
                    sw.iter().zip(&bw).map(|(s, b)| s - &(b * &inv)).collect()
                }
            };
            if res.iter().any(|x| !x.is_zero()) {
                residuals.push(ColumnResidual {
                    map: name.clone(),
                    column: j,
                    residual: res,
                });
            }
        }
    }
    if certificate_ok {
        certificate_ok = certificate_is_integrable(sys.delta(), &g.cert)?;
    }
    let full_rank = g.vectors.cols() > 0 && g.vectors.rank() == g.vectors.cols();
    Ok(GroupCheck {
        residuals,
        full_rank,
        certificate_ok,
    })
}

/// The scalar compatibility conditions between certificate values.
pub fn certificate_is_integrable(delta: &DeltaSet, cert: &Certificate) -> Result<bool> {
    let entries = cert.entries();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let (mi, li) = (map_of(delta, &entries[i].0)?, &entries[i].1);
            let (mj, lj) = (map_of(delta, &entries[j].0)?, &entries[j].1);
            let ok = match (mi.kind(), mj.kind()) {
                (MapKind::Derivation, MapKind::Derivation) => mi.apply(lj) == mj.apply(li),
                (MapKind::Derivation, MapKind::Shift) => mi.log_of(lj)? == &mj.apply(li) - li,
                (MapKind::Shift, MapKind::Derivation) => mj.log_of(li)? == &mi.apply(lj) - lj,
                (MapKind::Shift, MapKind::Shift) => &mi.apply(lj) * li == &mj.apply(li) * lj,
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A rational `p` with `h1 = p h2` (up to a constant) for elements with
/// certificates `c1`, `c2` over the same maps, if one exists.
pub fn associate_witness(delta: &DeltaSet, c1: &Certificate, c2: &Certificate) -> Result<Option<RatFunc>> {
    if c1.len() != c2.len() {
        return Ok(None);
    }
    let mut targets = Vec::with_capacity(c1.len());
    for (name, a) in c1.entries() {
        let Some(b) = c2.get(name) else { return Ok(None) };
        let m = map_of(delta, name)?;
        targets.push((m.clone(), m.quotient(a, b)?));
    }
    rational_multiplicative_solve(delta.nvars(), &targets)
}

/// Module eigenvalues of the submodule spanned by a group column:
/// `-ell` for derivations and `1/ell` for shifts.
pub fn certificate_eigenvalues(delta: &DeltaSet, cert: &Certificate) -> Result<Vec<(String, RatFunc)>> {
    cert.entries()
        .iter()
        .map(|(name, v)| {
            let m = map_of(delta, name)?;
            let f = match m.kind() {
                MapKind::Derivation => -v,
                MapKind::Shift => v.inv()?,
            };
            Ok((name.clone(), f))
        })
        .collect()
}

/// Nonzero `r` with `delta_i(r) = (f_i - g_i) r` and `sigma_j(r) = f_j/g_j r`
/// when the one-dimensional submodules with eigenvalues `f` and `g` are
/// isomorphic.
pub fn iso_test(delta: &DeltaSet, f: &[(String, RatFunc)], g: &[(String, RatFunc)]) -> Result<Option<RatFunc>> {
    let mut targets = Vec::with_capacity(f.len());
    for (name, fi) in f {
        let Some((_, gi)) = g.iter().find(|(n, _)| n == name) else {
            return Err(Error::InvalidInput(format!("map '{name}' missing from the second tuple")));
        };
        let m = map_of(delta, name)?;
        let b = match m.kind() {
            MapKind::Derivation => fi - gi,
            MapKind::Shift => fi.checked_div(gi)?,
        };
        targets.push((m.clone(), b));
    }
    rational_multiplicative_solve(delta.nvars(), &targets)
}

/// Same number of groups, associate certificates, and equal solution
/// spaces after rescaling by the associate witness.
pub fn representations_equivalent(delta: &DeltaSet, a: &Representation, b: &Representation) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    'groups: for ga in &a.groups {
        for (j, gb) in b.groups.iter().enumerate() {
            if used[j] {
                continue;
            }
            // h_a = p h_b, so h_a V_a = h_b (p V_a)
            let Some(p) = associate_witness(delta, &ga.cert.ordered(delta), &gb.cert.ordered(delta))? else {
                continue;
            };
            let scaled = ga.vectors.scale(&p);
            let ra = scaled.rank();
            if ra == gb.vectors.rank() && scaled.hstack(&gb.vectors).rank() == ra {
                used[j] = true;
                continue 'groups;
            }
            return Ok(false);
        }
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::q;

    fn vars() -> Vars {
        Vars::new(&["x", "n"]).unwrap()
    }

    #[test]
    fn zero_derivation_system() {
        let v = vars();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("x", q(1))]).unwrap();
        let delta = DeltaSet::new(2, vec![d.clone()]).unwrap();
        let sys = IntegrableSystem::new(v, delta, vec![MatrixF::zeros(2, 2, 2)]).unwrap();
        let g = HyperexpGroup {
            cert: Certificate::neutral(&[d]),
            vectors: MatrixF::identity(2, 2),
        };
        assert!(verify_group(&sys, &g).unwrap().passed());
    }

    #[test]
    fn identity_structure_for_shift() {
        let v = vars();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("n", q(1))]).unwrap();
        let delta = DeltaSet::new(2, vec![s]).unwrap();
        let sm = StructureMatrices::new(v, delta, vec![MatrixF::identity(2, 2)]).unwrap();
        let sys = sm.associated_system().unwrap();
        assert!(sys.matrices()[0].is_identity());
    }

    #[test]
    fn non_integrable_pair_is_reported() {
        let v = vars();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("x", q(1))]).unwrap();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("n", q(1))]).unwrap();
        let delta = DeltaSet::new(2, vec![d, s]).unwrap();
        let bd = MatrixF::from_rows(vec![vec![v.parse("n").unwrap()]], 2);
        let bs = MatrixF::from_rows(vec![vec![v.parse("x").unwrap()]], 2);
        match IntegrableSystem::new(v, delta, vec![bd, bs]) {
            Err(Error::NotIntegrable { first, second, .. }) => {
                assert_eq!((first.as_str(), second.as_str()), ("d", "s"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn iso_and_witness() {
        let v = vars();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("n", q(1))]).unwrap();
        let delta = DeltaSet::new(2, vec![s]).unwrap();
        let f = vec![("s".to_string(), v.parse("1/n").unwrap())];
        let g = vec![("s".to_string(), v.parse("1/x").unwrap())];
        assert_eq!(iso_test(&delta, &f, &f).unwrap(), Some(RatFunc::one(2)));
        assert_eq!(iso_test(&delta, &f, &g).unwrap(), None);
        let c1 = Certificate::from_pairs(vec![("s".into(), v.parse("n").unwrap())]);
        let c2 = Certificate::from_pairs(vec![("s".into(), v.parse("n*(n+1)/n").unwrap())]);
        let p = associate_witness(&delta, &c2, &c1).unwrap().unwrap();
        assert!((&p / &v.parse("n").unwrap()).is_constant());
    }
}
