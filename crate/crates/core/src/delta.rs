//! Derivations and shifts with constant directions, their constant fields,
//! and linear dependence over constants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::MatrixF;
use crate::ratfunc::gcd::{gcd_many, lcm};
use crate::ratfunc::poly::Exps;
use crate::ratfunc::{Poly, RatFunc, Vars, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// `sum_v c_v d/dv`
    Derivation,
    /// `v -> v + s_v`
    Shift,
}

impl MapKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MapKind::Derivation => "derivation",
            MapKind::Shift => "shift",
        }
    }
}

/// One operator: a derivation with constant coefficients or a shift by a
/// constant vector.  `action` has one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaMap {
    name: String,
    kind: MapKind,
    action: Vec<Q>,
}

impl DeltaMap {
    pub fn new(name: &str, kind: MapKind, action: Vec<Q>) -> Result<DeltaMap> {
        if action.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidInput(format!(
                "map '{name}' does not move any variable"
            )));
        }
        Ok(DeltaMap::new_unchecked(name, kind, action))
    }

    /// Allows the zero action, used for maps restricted to a constant field
    /// on which they act trivially.
    pub fn new_unchecked(name: &str, kind: MapKind, action: Vec<Q>) -> DeltaMap {
        DeltaMap {
            name: name.to_string(),
            kind,
            action,
        }
    }

    pub fn derivation(name: &str, action: Vec<Q>) -> Result<DeltaMap> {
        DeltaMap::new(name, MapKind::Derivation, action)
    }

    pub fn shift(name: &str, action: Vec<Q>) -> Result<DeltaMap> {
        DeltaMap::new(name, MapKind::Shift, action)
    }

    /// Build from `(variable, value)` pairs.
    pub fn from_pairs(name: &str, kind: MapKind, vars: &Vars, pairs: &[(&str, Q)]) -> Result<DeltaMap> {
        let mut action = vec![Q::zero(); vars.len()];
        for (v, c) in pairs {
            let i = vars
                .index(v)
                .ok_or_else(|| Error::InvalidInput(format!("unknown variable '{v}'")))?;
            action[i] = c.clone();
        }
        DeltaMap::new(name, kind, action)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn is_derivation(&self) -> bool {
        self.kind == MapKind::Derivation
    }

    pub fn is_shift(&self) -> bool {
        self.kind == MapKind::Shift
    }

    pub fn action(&self) -> &[Q] {
        &self.action
    }

    pub fn nvars(&self) -> usize {
        self.action.len()
    }

    /// True when the map is the identity (shift) or zero (derivation).
    pub fn is_trivial(&self) -> bool {
        self.action.iter().all(|c| c.is_zero())
    }

    pub fn moves(&self, var: usize) -> bool {
        !self.action[var].is_zero()
    }

    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        match self.kind {
            MapKind::Derivation => f.directional_derivative(&self.action),
            MapKind::Shift => f.translate(&self.action),
        }
    }

    pub fn apply_poly(&self, p: &Poly) -> Poly {
        match self.kind {
            MapKind::Derivation => p.directional_derivative(&self.action),
            MapKind::Shift => p.translate(&self.action),
        }
    }

    /// `phi^k`; negative powers only for shifts.
    pub fn apply_power(&self, f: &RatFunc, k: i64) -> RatFunc {
        match self.kind {
            MapKind::Shift => {
                let s: Vec<Q> = self.action.iter().map(|c| c * Q::from_integer(k.into())).collect();
                f.translate(&s)
            }
            MapKind::Derivation => {
                assert!(k >= 0, "negative power of a derivation");
                let mut g = f.clone();
                for _ in 0..k {
                    g = self.apply(&g);
                }
                g
            }
        }
    }

    pub fn apply_matrix(&self, m: &MatrixF) -> MatrixF {
        m.map(|x| self.apply(x))
    }

    pub fn apply_vec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        v.iter().map(|x| self.apply(x)).collect()
    }

    /// Logarithmic derivative `phi(f)/f` or shift quotient `phi(f)/f`.
    pub fn log_of(&self, f: &RatFunc) -> Result<RatFunc> {
        self.apply(f).checked_div(f)
    }

    /// The neutral certificate value: 0 for derivations, 1 for shifts.
    pub fn neutral(&self) -> RatFunc {
        match self.kind {
            MapKind::Derivation => RatFunc::zero(self.nvars()),
            MapKind::Shift => RatFunc::one(self.nvars()),
        }
    }

    /// Certificate value of a product of hyperexponential elements.
    pub fn combine(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        match self.kind {
            MapKind::Derivation => a + b,
            MapKind::Shift => a * b,
        }
    }

    /// Certificate value of a quotient `h1 / h2`.
    pub fn quotient(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        match self.kind {
            MapKind::Derivation => Ok(a - b),
            MapKind::Shift => a.checked_div(b),
        }
    }

    /// Certificate value of the rational function `p` itself.
    pub fn cert_of(&self, p: &RatFunc) -> Result<RatFunc> {
        match self.kind {
            MapKind::Derivation => self.apply(p).checked_div(p),
            MapKind::Shift => self.log_of(p),
        }
    }

    pub fn with_action(&self, action: Vec<Q>) -> DeltaMap {
        DeltaMap::new_unchecked(&self.name, self.kind, action)
    }

    pub fn describe(&self, vars: &Vars) -> String {
        let parts: Vec<String> = self
            .action
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}:{}", vars.names()[i], c))
            .collect();
        format!("{} {}({})", self.kind.as_str(), self.name, parts.join(","))
    }
}

impl fmt::Display for DeltaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// An ordered set of commuting maps.  Constant-direction derivations and
/// shifts always commute, so only name uniqueness is checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSet {
    nvars: usize,
    maps: Vec<DeltaMap>,
}

impl DeltaSet {
    pub fn new(nvars: usize, maps: Vec<DeltaMap>) -> Result<DeltaSet> {
        for (i, m) in maps.iter().enumerate() {
            if m.nvars() != nvars {
                return Err(Error::InvalidInput(format!(
                    "map '{}' has the wrong number of variables",
                    m.name()
                )));
            }
            if maps[..i].iter().any(|o| o.name() == m.name()) {
                return Err(Error::InvalidInput(format!("duplicate map name '{}'", m.name())));
            }
        }
        Ok(DeltaSet { nvars, maps })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn maps(&self) -> &[DeltaMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&DeltaMap> {
        self.maps.iter().find(|m| m.name() == name)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.maps.iter().position(|m| m.name() == name)
    }

    /// Variables moved by no map.
    pub fn parameters(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.maps.iter().all(|m| !m.moves(v)))
            .collect()
    }

    pub fn constant_field(&self) -> ConstantField {
        ConstantField::new(self.nvars, &self.maps)
    }
}

/// Reduced row echelon form over Q.
fn rref_q(rows: Vec<Vec<Q>>, ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (j, x) in row.iter_mut().enumerate() {
                    *x = &*x - &(&f * &pr[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// The constants `C'(F)` of a subset of maps, realized by a linear change
/// of variables.  Slots split into active ones (pivots of the echelon form
/// of the directions) and invariant ones; in the new coordinates an element
/// is constant exactly when it involves no active slot.
///
/// Constants are handled in "invariant form": functions of the invariant
/// slots only, where slot `j` stands for `x_j - sum_i R[i][j] x_{p_i}`.
#[derive(Clone, Debug)]
pub struct ConstantField {
    nvars: usize,
    names: Vec<String>,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    forward: Vec<Option<Poly>>,
    backward: Vec<Option<Poly>>,
}

impl ConstantField {
    pub fn new(nvars: usize, maps: &[DeltaMap]) -> ConstantField {
        let dirs: Vec<Vec<Q>> = maps.iter().map(|m| m.action().to_vec()).collect();
        let (rows, pivots) = rref_q(dirs, nvars);
        let mut forward = vec![None; nvars];
        let mut backward = vec![None; nvars];
        for j in 0..nvars {
            if pivots.contains(&j) {
                continue;
            }
            if rows.iter().all(|r| r[j].is_zero()) {
                continue;
            }
            let mut f = Poly::var(nvars, j);
            let mut b = Poly::var(nvars, j);
            for (i, &p) in pivots.iter().enumerate() {
                let t = Poly::monomial(nvars, p, 1, rows[i][j].clone());
                f = &f + &t;
                b = &b - &t;
            }
            forward[j] = Some(f);
            backward[j] = Some(b);
        }
        ConstantField {
            nvars,
            names: maps.iter().map(|m| m.name().to_string()).collect(),
            rows,
            pivots,
            forward,
            backward,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Names of the maps whose constants these are.
    pub fn map_names(&self) -> &[String] {
        &self.names
    }

    pub fn active(&self) -> &[usize] {
        &self.pivots
    }

    pub fn invariant_slots(&self) -> Vec<usize> {
        (0..self.nvars).filter(|v| !self.pivots.contains(v)).collect()
    }

    /// Rewrite in the adapted coordinates (active slots keep `x_p`).
    pub fn forward(&self, f: &RatFunc) -> RatFunc {
        if self.forward.iter().all(|x| x.is_none()) {
            return f.clone();
        }
        f.substitute_invertible(&self.forward)
    }

    pub fn backward(&self, f: &RatFunc) -> RatFunc {
        if self.backward.iter().all(|x| x.is_none()) {
            return f.clone();
        }
        f.substitute_invertible(&self.backward)
    }

    /// The invariant form of `f` if it is a constant.
    pub fn to_invariant(&self, f: &RatFunc) -> Option<RatFunc> {
        let g = self.forward(f);
        if self.pivots.iter().any(|&p| g.involves(p)) {
            None
        } else {
            Some(g)
        }
    }

    pub fn is_constant(&self, f: &RatFunc) -> bool {
        self.to_invariant(f).is_some()
    }

    /// From invariant form back to an element of F.
    pub fn lift(&self, g: &RatFunc) -> RatFunc {
        self.backward(g)
    }

    pub fn lift_matrix(&self, m: &MatrixF) -> MatrixF {
        m.map(|x| self.lift(x))
    }

    /// The map induced on the constant field, acting on invariant forms.
    pub fn restrict(&self, map: &DeltaMap) -> DeltaMap {
        let e = map.action();
        let mut out = vec![Q::zero(); self.nvars];
        for j in 0..self.nvars {
            if self.pivots.contains(&j) {
                continue;
            }
            let mut v = e[j].clone();
            for (i, &p) in self.pivots.iter().enumerate() {
                v -= &self.rows[i][j] * &e[p];
            }
            out[j] = v;
        }
        map.with_action(out)
    }

    /// Decompose `fs` over one shared basis: `fs[k] = sum_s coeffs[k][s] *
    /// basis[s]` with coefficients constant (returned in invariant form)
    /// and basis elements independent over the constants.
    pub fn decompose(&self, fs: &[RatFunc]) -> Decomposition {
        let nv = self.nvars;
        let g: Vec<RatFunc> = fs.iter().map(|f| self.forward(f)).collect();
        let mut den = Poly::one(nv);
        for x in &g {
            den = lcm(&den, x.den());
        }
        let den_w = content_outside(&den, &self.pivots);
        let den_t = den.div_exact(&den_w).expect("content divides");
        let den_w_rf = RatFunc::from_poly(den_w);
        let mut monos: BTreeMap<Exps, ()> = BTreeMap::new();
        let mut parts: Vec<BTreeMap<Exps, Poly>> = Vec::new();
        for x in &g {
            let mult = den.div_exact(x.den()).expect("lcm is a multiple");
            let num = x.num() * &mult;
            let split = split_by_active(&num, &self.pivots);
            for m in split.keys() {
                monos.insert(m.clone(), ());
            }
            parts.push(split);
        }
        let keys: Vec<Exps> = monos.into_keys().rev().collect();
        let den_t_rf = RatFunc::from_poly(den_t);
        let basis: Vec<RatFunc> = keys
            .iter()
            .map(|m| {
                let mono = Poly::from_terms(nv, [(m.clone(), Q::one())]);
                self.backward(&(&RatFunc::from_poly(mono) / &den_t_rf))
            })
            .collect();
        let coeffs = parts
            .iter()
            .map(|split| {
                keys.iter()
                    .map(|m| match split.get(m) {
                        Some(c) => &RatFunc::from_poly(c.clone()) / &den_w_rf,
                        None => RatFunc::zero(nv),
                    })
                    .collect()
            })
            .collect();
        Decomposition { basis, coeffs }
    }
}

/// Result of `ConstantField::decompose`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub basis: Vec<RatFunc>,
    /// `coeffs[k][s]`, in invariant form.
    pub coeffs: Vec<Vec<RatFunc>>,
}

impl Decomposition {
    pub fn recombine(&self, k: usize, cf: &ConstantField) -> RatFunc {
        let nv = cf.nvars();
        let mut acc = RatFunc::zero(nv);
        for (c, b) in self.coeffs[k].iter().zip(&self.basis) {
            acc = &acc + &(&cf.lift(c) * b);
        }
        acc
    }
}

/// Group terms by their exponents in `active` slots.
fn split_by_active(p: &Poly, active: &[usize]) -> BTreeMap<Exps, Poly> {
    let nv = p.nvars();
    let mut groups: BTreeMap<Exps, Vec<(Exps, Q)>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut key: Exps = smallvec::smallvec![0; nv];
        let mut rest = e.clone();
        for &a in active {
            key[a] = e[a];
            rest[a] = 0;
        }
        groups.entry(key).or_default().push((rest, c.clone()));
    }
    groups
        .into_iter()
        .map(|(k, v)| (k, Poly::from_terms(nv, v)))
        .collect()
}

/// Gcd of the coefficients of `p` as a polynomial in the `active` slots.
fn content_outside(p: &Poly, active: &[usize]) -> Poly {
    if active.is_empty() {
        return p.clone();
    }
    let split = split_by_active(p, active);
    let mut cs: Vec<&Poly> = split.values().collect();
    cs.sort_by_key(|c| c.len());
    gcd_many(p.nvars(), cs)
}

/// Normal coordinates for a single map: with `p` the first moved slot,
/// `x_p -> d_p t` and `x_j -> x_j + d_j t`, after which the map is `d/dt`
/// or `t -> t + 1` and the remaining slots are its constants.
#[derive(Clone, Debug)]
pub struct NormalFrame {
    nvars: usize,
    pivot: usize,
    forward: Vec<Option<Poly>>,
    backward: Vec<Option<Poly>>,
    trivial: bool,
}

impl NormalFrame {
    pub fn new(map: &DeltaMap) -> NormalFrame {
        let nv = map.nvars();
        let d = map.action();
        let Some(p) = d.iter().position(|c| !c.is_zero()) else {
            return NormalFrame {
                nvars: nv,
                pivot: 0,
                forward: vec![None; nv],
                backward: vec![None; nv],
                trivial: true,
            };
        };
        let mut forward = vec![None; nv];
        let mut backward = vec![None; nv];
        let dp = d[p].clone();
        if !dp.is_one() {
            forward[p] = Some(Poly::monomial(nv, p, 1, dp.clone()));
            backward[p] = Some(Poly::monomial(nv, p, 1, dp.recip()));
        }
        for j in 0..nv {
            if j != p && !d[j].is_zero() {
                forward[j] = Some(&Poly::var(nv, j) + &Poly::monomial(nv, p, 1, d[j].clone()));
                backward[j] = Some(&Poly::var(nv, j) - &Poly::monomial(nv, p, 1, &d[j] / &dp));
            }
        }
        NormalFrame {
            nvars: nv,
            pivot: p,
            forward,
            backward,
            trivial: false,
        }
    }

    /// The slot holding the normal coordinate `t`.
    pub fn var(&self) -> usize {
        self.pivot
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn forward(&self, f: &RatFunc) -> RatFunc {
        if self.forward.iter().all(|x| x.is_none()) {
            return f.clone();
        }
        f.substitute_invertible(&self.forward)
    }

    pub fn backward(&self, f: &RatFunc) -> RatFunc {
        if self.backward.iter().all(|x| x.is_none()) {
            return f.clone();
        }
        f.substitute_invertible(&self.backward)
    }

    pub fn forward_matrix(&self, m: &MatrixF) -> MatrixF {
        m.map(|x| self.forward(x))
    }

    pub fn backward_matrix(&self, m: &MatrixF) -> MatrixF {
        m.map(|x| self.backward(x))
    }

    /// The map in normal coordinates.
    pub fn normal_map(&self, map: &DeltaMap) -> DeltaMap {
        let mut a = vec![Q::zero(); self.nvars];
        if !self.trivial {
            a[self.pivot] = Q::one();
        }
        map.with_action(a)
    }
}

/// Exponent vectors of total degree `d` over `m` maps, lex-descending.
fn exponents_of_degree(m: usize, d: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponents_of_degree(m - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Outcome of the rank test on `(theta f_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dependence {
    Independent,
    /// Constants `d_i`, not all zero, with `sum d_i f_i = 0`.
    Dependent(Vec<RatFunc>),
}

/// Decide linear dependence of `fs` over the constants of `maps` with the
/// matrix `(theta f_i)` for `theta` of order below `fs.len()`, built order
/// by order and stopped early once it has full rank.
pub fn dependence_over_constants(fs: &[RatFunc], maps: &[DeltaMap], nvars: usize) -> Result<Dependence> {
    let s = fs.len();
    if s == 0 {
        return Ok(Dependence::Independent);
    }
    let mut values: BTreeMap<Vec<usize>, Vec<RatFunc>> = BTreeMap::new();
    let mut echelon: Vec<(usize, Vec<RatFunc>)> = Vec::new();
    let mut kept_rows: Vec<Vec<RatFunc>> = Vec::new();
    let m = maps.len();
    'orders: for order in 0..s {
        for e in exponents_of_degree(m, order) {
            let row = if order == 0 {
                fs.to_vec()
            } else {
                let i = e.iter().position(|&k| k > 0).expect("positive order");
                let mut prev = e.clone();
                prev[i] -= 1;
                let base = &values[&prev];
                maps[i].apply_vec(base)
            };
            values.insert(e, row.clone());
            if add_to_echelon(&mut echelon, row.clone()) {
                kept_rows.push(row);
                if echelon.len() == s {
                    break 'orders;
                }
            }
        }
        if m == 0 {
            break;
        }
    }
    if echelon.len() == s {
        return Ok(Dependence::Independent);
    }
    let w = if kept_rows.is_empty() {
        MatrixF::zeros(1, s, nvars)
    } else {
        MatrixF::from_rows(kept_rows, nvars)
    };
    let ns = w.nullspace();
    let mut v = ns.into_iter().next().expect("rank below column count");
    // sign convention: first nonzero entry positive
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.num().lc() < Q::zero() {
            v = v.iter().map(|x| -x).collect();
        }
    }
    let cf = ConstantField::new(nvars, maps);
    for x in &v {
        if !cf.is_constant(x) {
            return Err(Error::InternalInconsistency(
                "kernel vector of the rank-test matrix is not constant".into(),
            ));
        }
    }
    Ok(Dependence::Dependent(v))
}

/// Reduce `row` against `echelon` and append it if it is independent.
fn add_to_echelon(echelon: &mut Vec<(usize, Vec<RatFunc>)>, mut row: Vec<RatFunc>) -> bool {
    for (p, e) in echelon.iter() {
        if !row[*p].is_zero() {
            let f = row[*p].clone();
            for (x, y) in row.iter_mut().zip(e) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    let Some(p) = row.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let inv = row[p].inv().expect("nonzero");
    for x in row.iter_mut() {
        *x = &*x * &inv;
    }
    echelon.push((p, row));
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::{q, Vars};

    fn setup() -> Vars {
        Vars::new(&["x", "y", "e"]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let v = setup();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("x", q(1)), ("y", q(1))]).unwrap();
        assert_eq!(d.apply(&v.parse("x*y").unwrap()), v.parse("x+y").unwrap());
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("x", q(1))]).unwrap();
        assert_eq!(s.apply(&v.parse("x/(x+1)").unwrap()), v.parse("(x+1)/(x+2)").unwrap());
        assert!(s.apply(&RatFunc::one(3)).is_one());
        assert!(d.apply(&RatFunc::one(3)).is_zero());
    }

    #[test]
    fn constant_fields() {
        let v = setup();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("x", q(1))]).unwrap();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("x", q(1)), ("y", q(1))]).unwrap();
        let cs = ConstantField::new(3, std::slice::from_ref(&s));
        assert!(cs.is_constant(&v.parse("y/(y+1)").unwrap()));
        assert!(!cs.is_constant(&v.parse("x").unwrap()));
        let cd = ConstantField::new(3, std::slice::from_ref(&d));
        assert!(cd.is_constant(&v.parse("x-y").unwrap()));
        assert!(!cd.is_constant(&v.parse("x").unwrap()));
        let both = ConstantField::new(3, &[s.clone(), d.clone()]);
        assert!(both.is_constant(&v.parse("e^2+1").unwrap()));
        assert!(!both.is_constant(&v.parse("x-y").unwrap()));
        // restriction of d to the constants of s acts on y only
        let r = cs.restrict(&d);
        assert_eq!(r.action(), &[q(0), q(1), q(0)]);
        assert!(both.restrict(&d).is_trivial());
    }

    #[test]
    fn decompose_example() {
        let v = setup();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("x", q(1))]).unwrap();
        let cf = ConstantField::new(3, &[s]);
        let f = v.parse("(2*x+y)/x").unwrap();
        let dec = cf.decompose(std::slice::from_ref(&f));
        assert_eq!(dec.basis, vec![RatFunc::one(3), v.parse("1/x").unwrap()]);
        assert_eq!(dec.coeffs[0], vec![RatFunc::int(3, 2), v.parse("y").unwrap()]);
        assert_eq!(dec.recombine(0, &cf), f);
        let c = v.parse("y+e").unwrap();
        let dec = cf.decompose(std::slice::from_ref(&c));
        assert_eq!(dec.basis, vec![RatFunc::one(3)]);
        assert_eq!(dec.coeffs[0], vec![c]);
    }

    #[test]
    fn dependence_examples() {
        let v = Vars::new(&["x", "y"]).unwrap();
        let dx = DeltaMap::from_pairs("dx", MapKind::Derivation, &v, &[("x", q(1))]).unwrap();
        let dy = DeltaMap::from_pairs("dy", MapKind::Derivation, &v, &[("y", q(1))]).unwrap();
        let one_x = [RatFunc::one(2), v.parse("x").unwrap()];
        assert_eq!(
            dependence_over_constants(&one_x, std::slice::from_ref(&dx), 2).unwrap(),
            Dependence::Independent
        );
        let two = [v.parse("x").unwrap(), v.parse("2*x").unwrap()];
        match dependence_over_constants(&two, std::slice::from_ref(&dx), 2).unwrap() {
            Dependence::Dependent(d) => {
                assert_eq!(&d[0] * &two[0] + &d[1] * &two[1], RatFunc::zero(2));
                assert_eq!(d, vec![RatFunc::int(2, 2), RatFunc::int(2, -1)]);
            }
            other => panic!("{other:?}"),
        }
        let three = [v.parse("y").unwrap(), v.parse("x+y").unwrap(), v.parse("x").unwrap()];
        match dependence_over_constants(&three, &[dx, dy], 2).unwrap() {
            Dependence::Dependent(d) => {
                assert_eq!(d, vec![RatFunc::int(2, 1), RatFunc::int(2, -1), RatFunc::int(2, 1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn normal_frame_roundtrip() {
        let v = setup();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("x", q(2)), ("y", q(1))]).unwrap();
        let fr = NormalFrame::new(&d);
        let f = v.parse("(x^2 + y)/(x - y + e)").unwrap();
        let g = fr.forward(&f);
        assert_eq!(fr.backward(&g), f);
        // in normal coordinates the map is d/dt
        let lhs = fr.forward(&d.apply(&f));
        let rhs = fr.normal_map(&d).apply(&g);
        assert_eq!(lhs, rhs);
    }
}
