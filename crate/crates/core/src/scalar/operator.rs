//! Scalar operators and the machinery shared by the scalar solvers:
//! indicial polynomials, degree bounds, universal denominators and
//! polynomial ansatz systems.  Unless stated otherwise, functions here work
//! in normal coordinates: slot `t` carries the map `d/dt` or `t -> t + 1`
//! and the other slots form the constant field `K`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::delta::{DeltaMap, MapKind};
use crate::error::{Error, Result};
use crate::linalg::MatrixF;
use crate::ratfunc::factor::{factor_univariate, FactorKind};
use crate::ratfunc::gcd::{gcd_in, lcm, spec_rng};
use rand::Rng;
use crate::ratfunc::poly::Exps;
use crate::ratfunc::{q, roots_in_field, FPoly, Poly, QPoly, RatFunc, Q};

/// `sum_j a_j phi^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarOperator {
    pub map: DeltaMap,
    pub coeffs: Vec<RatFunc>,
}

impl ScalarOperator {
    pub fn new(map: DeltaMap, mut coeffs: Vec<RatFunc>) -> Result<ScalarOperator> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("zero operator".into()));
        }
        Ok(ScalarOperator { map, coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.map.nvars()
    }

    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(self.nvars());
        let mut cur = f.clone();
        for (j, a) in self.coeffs.iter().enumerate() {
            if j > 0 {
                cur = self.map.apply(&cur);
            }
            if !a.is_zero() {
                acc = &acc + &(a * &cur);
            }
        }
        acc
    }

    /// `L_r` with `L(h w) = h L_r(w)` whenever `phi(h)/h = r` (shift) or
    /// `phi(h) = r h` (derivation).
    pub fn twist(&self, r: &RatFunc) -> ScalarOperator {
        let nv = self.nvars();
        match self.map.kind() {
            MapKind::Shift => {
                let mut prod = RatFunc::one(nv);
                let mut out = Vec::with_capacity(self.coeffs.len());
                for (j, a) in self.coeffs.iter().enumerate() {
                    if j > 0 {
                        prod = &prod * &self.map.apply_power(r, j as i64 - 1);
                    }
                    out.push(a * &prod);
                }
                ScalarOperator {
                    map: self.map.clone(),
                    coeffs: out,
                }
            }
            MapKind::Derivation => {
                // powers of (D + r) as coefficient lists
                let mut power: Vec<RatFunc> = vec![RatFunc::one(nv)];
                let mut out = vec![RatFunc::zero(nv); self.coeffs.len()];
                for (j, a) in self.coeffs.iter().enumerate() {
                    if j > 0 {
                        power = compose_d_plus(&power, r, &self.map);
                    }
                    for (i, c) in power.iter().enumerate() {
                        out[i] = &out[i] + &(a * c);
                    }
                }
                ScalarOperator {
                    map: self.map.clone(),
                    coeffs: out,
                }
            }
        }
    }

    /// Multiply all coefficients by a common factor making them
    /// polynomials with trivial content.
    pub fn polynomial_coeffs(&self) -> Vec<Poly> {
        clear_denominators(&self.coeffs)
    }
}

/// `(D + r) o P` for an operator `P = sum c_i D^i`.
fn compose_d_plus(p: &[RatFunc], r: &RatFunc, map: &DeltaMap) -> Vec<RatFunc> {
    let nv = map.nvars();
    let mut out = vec![RatFunc::zero(nv); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i] = &out[i] + &(&map.apply(c) + &(r * c));
        out[i + 1] = &out[i + 1] + c;
    }
    out
}

/// Scale a list of rational functions to polynomials without common
/// factor.
pub fn clear_denominators(cs: &[RatFunc]) -> Vec<Poly> {
    let nv = cs.first().map(|c| c.nvars()).unwrap_or(0);
    let mut den = Poly::one(nv);
    for c in cs {
        den = lcm(&den, c.den());
    }
    let polys: Vec<Poly> = cs
        .iter()
        .map(|c| c.num() * &den.div_exact(c.den()).expect("lcm is a multiple"))
        .collect();
    let g = crate::ratfunc::gcd::gcd_many(nv, polys.iter().filter(|p| !p.is_zero()));
    if g.is_zero() || g.is_one() {
        return polys;
    }
    polys
        .iter()
        .map(|p| p.div_exact(&g).expect("gcd divides"))
        .collect()
}

/// Coefficients of `m (m-1) ... (m-j+1)` from degree 0 upward.
pub fn falling_factorial(j: usize) -> Vec<Q> {
    let mut c = vec![Q::one()];
    for i in 0..j {
        // multiply by (m - i)
        let mut next = vec![Q::zero(); c.len() + 1];
        for (k, x) in c.iter().enumerate() {
            next[k + 1] += x;
            next[k] -= x * q(i as i64);
        }
        c = next;
    }
    c
}

pub fn binomial(n: usize, k: usize) -> Q {
    let mut r = Q::one();
    for i in 0..k {
        r = r * q((n - i) as i64) / q((i + 1) as i64);
    }
    r
}

/// Rational `m` with `sum_l cs[l] m^l = 0`, the `cs` being elements of
/// the coefficient field.  `None` when the polynomial vanishes
/// identically.
pub fn rational_roots_in_k(cs: &[RatFunc]) -> Option<Vec<Q>> {
    if cs.iter().all(|c| c.is_zero()) {
        return None;
    }
    let polys = clear_denominators(cs);
    let mut monos: BTreeSet<Exps> = BTreeSet::new();
    for p in &polys {
        for (e, _) in p.terms() {
            monos.insert(e.clone());
        }
    }
    let mut g = QPoly::zero();
    for mono in monos {
        let slice: Vec<Q> = polys
            .iter()
            .map(|p| {
                p.terms()
                    .iter()
                    .find(|(e, _)| *e == mono)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Q::zero)
            })
            .collect();
        g = g.gcd(&QPoly::new(slice));
        if g.degree() == 0 {
            return Some(vec![]);
        }
    }
    Some(g.rational_roots())
}

/// Roots in `K` of `sum_l cs[l] m^l`, the `cs` being free of `t`, which
/// serves as the placeholder for `m`.  `None` when the polynomial vanishes
/// identically.
pub fn roots_in_k(cs: &[RatFunc], t: usize) -> Option<Vec<RatFunc>> {
    if cs.iter().all(|c| c.is_zero()) {
        return None;
    }
    let nv = cs[0].nvars();
    let mut p = Poly::zero(nv);
    for (l, c) in clear_denominators(cs).iter().enumerate() {
        p = &p + &(c * &Poly::monomial(nv, t, l as u32, Q::one()));
    }
    Some(roots_in_field(&p, t))
}

/// Roots in `K` of `sum_l cs[l] m^l` in `K[t]/p`, the `cs` being reduced
/// residues.
pub fn roots_mod_in_k(cs: &[FPoly], t: usize) -> Option<Vec<RatFunc>> {
    let maxdeg = cs.iter().map(|c| c.degree()).max().unwrap_or(-1);
    if maxdeg < 0 {
        return None;
    }
    let slices: Vec<Vec<RatFunc>> = (0..=maxdeg as usize)
        .map(|i| cs.iter().map(|c| c.coeff(i)).collect())
        .filter(|s: &Vec<RatFunc>| s.iter().any(|x| !x.is_zero()))
        .collect();
    let cands = roots_in_k(&slices[0], t)?;
    Some(
        cands
            .into_iter()
            .filter(|m| slices[1..].iter().all(|s| eval_k(s, m).is_zero()))
            .collect(),
    )
}

fn eval_k(cs: &[RatFunc], m: &RatFunc) -> RatFunc {
    let mut acc = RatFunc::zero(m.nvars());
    for c in cs.iter().rev() {
        acc = &(&acc * m) + c;
    }
    acc
}

/// Multiplicity of `p` in `a` (which must be nonzero).
pub fn valuation(a: &Poly, p: &Poly) -> u32 {
    let mut v = 0;
    let mut cur = a.clone();
    while let Some(next) = cur.div_exact(p) {
        cur = next;
        v += 1;
    }
    v
}

/// Local data of `sum a_j D^j` at an irreducible `p` (derivation case):
/// the rational roots of the indicial polynomial and whether `p` is a
/// regular singular point.
pub struct LocalExponents {
    pub exponents: Vec<RatFunc>,
    pub regular: bool,
}

pub fn local_exponents_derivation(a: &[Poly], p: &Poly, t: usize) -> LocalExponents {
    let k = a.len() - 1;
    let vals: Vec<Option<i64>> = a
        .iter()
        .map(|c| if c.is_zero() { None } else { Some(valuation(c, p) as i64) })
        .collect();
    let mu = vals
        .iter()
        .enumerate()
        .filter_map(|(j, v)| v.map(|v| v - j as i64))
        .min()
        .expect("nonzero operator");
    let regular = vals[k].map(|v| v - k as i64) == Some(mu);
    let pf = FPoly::from_poly(p, t);
    let dp = pf.derivative();
    let mut cm: Vec<FPoly> = Vec::new();
    for (j, v) in vals.iter().enumerate() {
        let Some(v) = v else { continue };
        if *v - j as i64 != mu {
            continue;
        }
        let unit = a[j].div_exact(&p.pow(*v as u32)).expect("valuation divides");
        let cj = FPoly::from_poly(&unit, t).mul(&dp.pow(j as u32)).rem(&pf);
        let ff = falling_factorial(j);
        for (l, s) in ff.iter().enumerate() {
            while cm.len() <= l {
                cm.push(FPoly::zero(p.nvars(), t));
            }
            if !s.is_zero() {
                cm[l] = cm[l].add(&cj.scale(&RatFunc::constant(p.nvars(), s.clone())));
            }
        }
    }
    let exponents = roots_mod_in_k(&cm, t).unwrap_or_default();
    LocalExponents { exponents, regular }
}

/// Largest `N >= 0` that can be the degree of a polynomial solution of
/// `sum b_j D^j` (derivation) or `sum b_j S^j` (shift), or `None` when only
/// zero is a polynomial solution.
pub fn polynomial_degree_bound(b: &[Poly], t: usize, kind: MapKind) -> Option<i64> {
    let c: Vec<Poly> = match kind {
        MapKind::Derivation => b.to_vec(),
        MapKind::Shift => {
            // rewrite in powers of S - 1
            let nv = b[0].nvars();
            (0..b.len())
                .map(|l| {
                    let mut acc = Poly::zero(nv);
                    for (j, bj) in b.iter().enumerate().skip(l) {
                        acc = &acc + &bj.scale(&binomial(j, l));
                    }
                    acc
                })
                .collect()
        }
    };
    let mu = c
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| x.degree(t) as i64 - j as i64)
        .max()?;
    let nv = c[0].nvars();
    let mut im: Vec<RatFunc> = Vec::new();
    for (j, x) in c.iter().enumerate() {
        if x.is_zero() || x.degree(t) as i64 - j as i64 != mu {
            continue;
        }
        let lc = RatFunc::from_poly(x.lc_in(t));
        for (l, s) in falling_factorial(j).iter().enumerate() {
            while im.len() <= l {
                im.push(RatFunc::zero(nv));
            }
            im[l] = &im[l] + &lc.scale(s);
        }
    }
    let roots = rational_roots_in_k(&im)?;
    roots
        .iter()
        .filter(|r| r.is_integer() && !r.is_negative())
        .map(|r| i64::try_from(r.to_integer()).unwrap_or(i64::MAX))
        .max()
}

/// Factor `p` in `t`, failing when some factor is not certified
/// irreducible.
pub fn complete_factors(p: &Poly, t: usize, what: &str) -> Result<Vec<(Poly, u32)>> {
    let f = factor_univariate(p, t);
    if let Some(bad) = f.factors.iter().find(|x| x.kind == FactorKind::Unverified) {
        return Err(Error::FactorizationIncomplete(format!(
            "{what}: factor of degree {} may not be irreducible",
            bad.poly.degree(t)
        )));
    }
    Ok(f.factors.into_iter().map(|x| (x.poly, x.multiplicity)).collect())
}

/// A denominator `U` such that every rational solution of the operator
/// with polynomial coefficients `a` has the form `P / U`.
pub fn universal_denominator(a: &[Poly], t: usize, kind: MapKind, max_dispersion: usize) -> Result<Poly> {
    let nv = a[0].nvars();
    let k = a.len() - 1;
    match kind {
        MapKind::Derivation => {
            let mut u = Poly::one(nv);
            if a[k].degree(t) == 0 {
                return Ok(u);
            }
            for (p, _) in complete_factors(&a[k], t, "leading coefficient")? {
                let loc = local_exponents_derivation(a, &p, t);
                let min_int = loc
                    .exponents
                    .iter()
                    .filter_map(|e| e.constant_value())
                    .filter(|e| e.is_integer())
                    .map(|e| e.to_integer())
                    .min();
                if let Some(m) = min_int {
                    if m < num_bigint::BigInt::zero() {
                        let e: u32 = (-m).try_into().unwrap_or(u32::MAX);
                        u = &u * &p.pow(e);
                    }
                }
            }
            Ok(u)
        }
        MapKind::Shift => {
            let lowest = a.iter().position(|c| !c.is_zero()).expect("nonzero operator");
            let shift_back = shift_vec(nv, t, -(k as i64));
            let mut big_a = a[k].translate(&shift_back);
            let mut big_b = a[lowest].clone();
            let mut u = Poly::one(nv);
            if big_a.degree(t) == 0 || big_b.degree(t) == 0 {
                return Ok(u);
            }
            let disp = dispersion_set(&big_a, &big_b, t)?;
            for &h in disp.iter().rev() {
                if h as usize > max_dispersion {
                    return Err(Error::DegreeBoundExceeded {
                        bound: h,
                        cap: max_dispersion,
                        context: "dispersion of the universal denominator".into(),
                    });
                }
                let bh = big_b.translate(&shift_vec(nv, t, h));
                let d = gcd_in(&big_a, &bh, t);
                if d.degree(t) == 0 {
                    continue;
                }
                big_a = big_a.div_exact(&d).expect("gcd divides");
                let d_back = d.translate(&shift_vec(nv, t, -h));
                big_b = big_b.div_exact(&d_back).expect("shifted gcd divides");
                for i in 0..=h {
                    u = &u * &d.translate(&shift_vec(nv, t, -i));
                }
            }
            Ok(u)
        }
    }
}

pub fn shift_vec(nv: usize, t: usize, h: i64) -> Vec<Q> {
    let mut s = vec![Q::zero(); nv];
    s[t] = q(h);
    s
}

/// Integers `h >= 0` with `gcd(A(t), B(t + h)) != 1`, ascending.
pub fn dispersion_set(a: &Poly, b: &Poly, t: usize) -> Result<Vec<i64>> {
    match (complete_factors(a, t, "dispersion"), complete_factors(b, t, "dispersion")) {
        (Ok(fa), Ok(fb)) => {
            let mut out = BTreeSet::new();
            for (f, _) in &fa {
                for (g, _) in &fb {
                    if let Some(h) = shift_distance(g, f, t) {
                        if h >= 0 {
                            out.insert(h);
                        }
                    }
                }
            }
            Ok(out.into_iter().collect())
        }
        _ => dispersion_by_resultant(a, b, t),
    }
}

/// Candidates from `Res_t(A(t), B(t + h))` at a random specialization of
/// the other variables, each confirmed by an exact gcd.
fn dispersion_by_resultant(a: &Poly, b: &Poly, t: usize) -> Result<Vec<i64>> {
    let nv = a.nvars();
    let mut rng = spec_rng(0xd15);
    let (da, db) = (a.degree(t), b.degree(t));
    let (la, lb) = (a.lc_in(t), b.lc_in(t));
    let point = (0..64)
        .map(|_| (0..nv).map(|_| q(rng.gen_range(-97..=97))).collect::<Vec<Q>>())
        .find(|pt| !la.eval(pt).is_zero() && !lb.eval(pt).is_zero())
        .ok_or_else(|| Error::InternalInconsistency("no good specialization point".into()))?;
    let special = |p: &Poly| {
        let mut r = p.clone();
        for (v, c) in point.iter().enumerate() {
            if v != t {
                r = r.eval_var(v, c);
            }
        }
        QPoly::from_poly(&r, t)
    };
    let (sa, sb) = (special(a), special(b));
    debug_assert_eq!((sa.degree(), sb.degree()), (da as isize, db as isize));
    let samples: Vec<(Q, Q)> = (0..=(da * db) as i64)
        .map(|h| (q(h), sa.resultant(&sb.translate(&q(h)))))
        .collect();
    let res = QPoly::interpolate(&samples);
    let mut out = Vec::new();
    for h in res.integer_roots() {
        let Ok(h) = i64::try_from(h) else { continue };
        if h < 0 {
            continue;
        }
        if gcd_in(a, &b.translate(&shift_vec(nv, t, h)), t).degree(t) > 0 {
            out.push(h);
        }
    }
    out.sort();
    Ok(out)
}

/// Integer `h` with `g(t + h)` proportional to `f(t)`, if any.
pub fn shift_distance(g: &Poly, f: &Poly, t: usize) -> Option<i64> {
    let d = f.degree(t);
    if d == 0 || g.degree(t) != d {
        return None;
    }
    let fc = f.coeffs_in(t);
    let gc = g.coeffs_in(t);
    let d = d as usize;
    let f1 = RatFunc::new(fc[d - 1].clone(), fc[d].clone()).ok()?;
    let g1 = RatFunc::new(gc[d - 1].clone(), gc[d].clone()).ok()?;
    // g(t+h) = lc (t^d + (g1 + d h) t^(d-1) + ...)
    let h = (&f1 - &g1).scale(&q(d as i64).recip()).constant_value()?;
    if !h.is_integer() {
        return None;
    }
    let h = i64::try_from(h.to_integer()).ok()?;
    let gs = g.translate(&shift_vec(g.nvars(), t, h));
    let ratio = RatFunc::new(gs, f.clone()).ok()?;
    (!ratio.involves(t)).then_some(h)
}

/// The kernel (and optionally a particular solution) of a linear system
/// whose unknowns live in `K` while its equations are rational in `t`:
/// `sum_u x_u cols[u][k] = rhs[k]` for every `k`, identically in `t`.
pub struct CoefficientSystem {
    pub particular: Option<Vec<RatFunc>>,
    pub kernel: Vec<Vec<RatFunc>>,
}

pub fn solve_coefficient_system(
    cols: &[Vec<RatFunc>],
    rhs: Option<&[RatFunc]>,
    t: usize,
    nvars: usize,
) -> CoefficientSystem {
    let nunk = cols.len();
    let neq = cols.first().map(|c| c.len()).or(rhs.map(|r| r.len())).unwrap_or(0);
    let mut rows: Vec<Vec<RatFunc>> = Vec::new();
    let mut rhs_rows: Vec<RatFunc> = Vec::new();
    for k in 0..neq {
        let mut den = Poly::one(nvars);
        for c in cols {
            den = lcm(&den, c[k].den());
        }
        if let Some(r) = rhs {
            den = lcm(&den, r[k].den());
        }
        let scaled = |f: &RatFunc| -> Vec<Poly> {
            if f.is_zero() {
                return vec![];
            }
            let n = f.num() * &den.div_exact(f.den()).expect("lcm is a multiple");
            n.coeffs_in(t)
        };
        let per_unknown: Vec<Vec<Poly>> = cols.iter().map(|c| scaled(&c[k])).collect();
        let rhs_poly = rhs.map(|r| scaled(&r[k])).unwrap_or_default();
        let maxlen = per_unknown
            .iter()
            .map(|v| v.len())
            .chain(std::iter::once(rhs_poly.len()))
            .max()
            .unwrap_or(0);
        for i in 0..maxlen {
            let row: Vec<RatFunc> = per_unknown
                .iter()
                .map(|v| v.get(i).map(|p| RatFunc::from_poly(p.clone())).unwrap_or_else(|| RatFunc::zero(nvars)))
                .collect();
            let r = rhs_poly
                .get(i)
                .map(|p| RatFunc::from_poly(p.clone()))
                .unwrap_or_else(|| RatFunc::zero(nvars));
            if row.iter().all(|x| x.is_zero()) && r.is_zero() {
                continue;
            }
            rows.push(row);
            rhs_rows.push(r);
        }
    }
    if nunk == 0 {
        let ok = rhs_rows.iter().all(|r| r.is_zero());
        return CoefficientSystem {
            particular: if ok { Some(vec![]) } else { None },
            kernel: vec![],
        };
    }
    if rows.is_empty() {
        let kernel = (0..nunk)
            .map(|u| {
                let mut v = vec![RatFunc::zero(nvars); nunk];
                v[u] = RatFunc::one(nvars);
                v
            })
            .collect();
        return CoefficientSystem {
            particular: Some(vec![RatFunc::zero(nvars); nunk]),
            kernel,
        };
    }
    let m = MatrixF::from_rows(rows, nvars);
    let kernel = m.nullspace();
    let particular = if rhs.is_some() {
        let b = MatrixF::column_vector(&rhs_rows, nvars);
        m.solve(&b).map(|x| x.col(0))
    } else {
        Some(vec![RatFunc::zero(nvars); nunk])
    };
    CoefficientSystem { particular, kernel }
}

/// All polynomial solutions of degree at most `bound` of the operator,
/// as a basis over `K`.
pub fn polynomial_solutions(op: &ScalarOperator, t: usize, bound: i64) -> Vec<RatFunc> {
    if bound < 0 {
        return vec![];
    }
    let nv = op.nvars();
    let monos: Vec<RatFunc> = (0..=bound as u32)
        .map(|e| RatFunc::from_poly(Poly::monomial(nv, t, e, Q::one())))
        .collect();
    let cols: Vec<Vec<RatFunc>> = monos.iter().map(|m| vec![op.apply(m)]).collect();
    let sys = solve_coefficient_system(&cols, None, t, nv);
    sys.kernel
        .iter()
        .map(|v| {
            let mut acc = RatFunc::zero(nv);
            for (c, m) in v.iter().zip(&monos) {
                acc = &acc + &(c * m);
            }
            acc
        })
        .collect()
}

/// Rational solutions (a basis over `K`) of a scalar operator in normal
/// coordinates.
pub fn rational_solutions_scalar(
    op: &ScalarOperator,
    t: usize,
    max_degree: usize,
    max_dispersion: usize,
) -> Result<Vec<RatFunc>> {
    let a = op.polynomial_coeffs();
    let u = universal_denominator(&a, t, op.map.kind(), max_dispersion)?;
    let u_rf = RatFunc::from_poly(u.clone());
    let inv_u = u_rf.inv()?;
    // L(P / U) as an operator in P
    let transformed = transform_by_denominator(op, &inv_u);
    let b = transformed.polynomial_coeffs();
    let bound = match polynomial_degree_bound(&b, t, op.map.kind()) {
        None => return Ok(vec![]),
        Some(n) => n,
    };
    if bound as usize > max_degree {
        return Err(Error::DegreeBoundExceeded {
            bound,
            cap: max_degree,
            context: "polynomial part of a rational solution".into(),
        });
    }
    let polys = polynomial_solutions(&transformed, t, bound);
    Ok(polys.iter().map(|p| p * &inv_u).collect())
}

/// The operator `P -> L(g P)`.
pub fn transform_by_denominator(op: &ScalarOperator, g: &RatFunc) -> ScalarOperator {
    let nv = op.nvars();
    match op.map.kind() {
        MapKind::Shift => ScalarOperator {
            map: op.map.clone(),
            coeffs: op
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, a)| a * &op.map.apply_power(g, j as i64))
                .collect(),
        },
        MapKind::Derivation => {
            // L(g P) = sum_j a_j sum_l C(j,l) g^(j-l) P^(l)
            let k = op.order();
            let mut derivs = vec![g.clone()];
            for _ in 0..k {
                let next = op.map.apply(derivs.last().unwrap());
                derivs.push(next);
            }
            let mut out = vec![RatFunc::zero(nv); k + 1];
            for (j, a) in op.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (l, o) in out.iter_mut().enumerate().take(j + 1) {
                    let term = &derivs[j - l].scale(&binomial(j, l)) * a;
                    *o = &*o + &term;
                }
            }
            ScalarOperator {
                map: op.map.clone(),
                coeffs: out,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::Vars;

    fn setup() -> (Vars, DeltaMap, DeltaMap) {
        let v = Vars::new(&["t", "a"]).unwrap();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("t", q(1))]).unwrap();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("t", q(1))]).unwrap();
        (v, d, s)
    }

    fn op(v: &Vars, m: &DeltaMap, cs: &[&str]) -> ScalarOperator {
        ScalarOperator::new(m.clone(), cs.iter().map(|c| v.parse(c).unwrap()).collect()).unwrap()
    }

    #[test]
    fn falling() {
        assert_eq!(falling_factorial(2), vec![q(0), q(-1), q(1)]);
    }

    #[test]
    fn rational_solutions_derivation() {
        let (v, d, _) = setup();
        // t^2 z'' + 3 t z' + z = 0 has 1/t
        let l = op(&v, &d, &["1", "3*t", "t^2"]);
        let sols = rational_solutions_scalar(&l, 0, 30, 100).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(l.apply(&sols[0]).is_zero());
        assert!(!sols[0].is_polynomial());
    }

    #[test]
    fn rational_solutions_shift() {
        let (v, _, s) = setup();
        // z(t+1) = t/(t+2) z  has 1/(t(t+1))
        let l = op(&v, &s, &["-t/(t+2)", "1"]);
        let sols = rational_solutions_scalar(&l, 0, 30, 100).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(l.apply(&sols[0]).is_zero());
        // z(t+1) = (t+1)/t z has t
        let l = op(&v, &s, &["-(t+1)/t", "1"]);
        let sols = rational_solutions_scalar(&l, 0, 30, 100).unwrap();
        assert_eq!(sols, vec![v.parse("t").unwrap()]);
    }

    #[test]
    fn parameter_dependent_exponents() {
        let (v, _, s) = setup();
        // z(t+1) = (t+a+1)/(t+a) z has t + a
        let l = op(&v, &s, &["-(t+a+1)/(t+a)", "1"]);
        let sols = rational_solutions_scalar(&l, 0, 30, 100).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(l.apply(&sols[0]).is_zero());
    }
}
