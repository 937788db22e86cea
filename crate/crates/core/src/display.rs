//! Human-readable names for hyperexponential elements.
//!
//! A certificate is matched against rational functions, `exp(z)` with `z`
//! rational, `c^t` and products of `Gamma(t + b)` along a unit shift.  The
//! result is a label only; nothing else depends on it.

use num_traits::One;

use crate::config::SolverConfig;
use crate::delta::{DeltaMap, DeltaSet, MapKind};
use crate::ratfunc::{RatFunc, Vars};
use crate::scalar::operator::complete_factors;
use crate::scalar::{rational_additive_solve, rational_multiplicative_solve};
use crate::system::Certificate;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Factor {
    Rational(RatFunc),
    Exp(RatFunc),
    /// `Gamma(arg)^mult`
    Gamma(RatFunc, i64),
    /// `base^exponent`, `exponent` linear
    Power(RatFunc, RatFunc),
}

impl Factor {
    /// Certificate value of the factor for `m`, when it is rational.
    fn value(&self, m: &DeltaMap) -> Option<RatFunc> {
        let nv = m.nvars();
        let moved = |f: &RatFunc| !m.apply(f).eq(&match m.kind() {
            MapKind::Derivation => RatFunc::zero(nv),
            MapKind::Shift => f.clone(),
        });
        match self {
            Factor::Rational(p) => m.cert_of(p).ok(),
            Factor::Exp(z) => match m.kind() {
                MapKind::Derivation => Some(m.apply(z)),
                MapKind::Shift => (!moved(z)).then(|| m.neutral()),
            },
            Factor::Gamma(arg, k) => {
                if !moved(arg) {
                    return Some(m.neutral());
                }
                if m.is_shift() && (&m.apply(arg) - arg).is_one() {
                    return arg.pow(*k as i32).ok();
                }
                None
            }
            Factor::Power(base, e) => {
                if !moved(e) {
                    return Some(m.neutral());
                }
                let d = (&m.apply(e) - e).constant_value()?;
                if m.is_shift() && d.is_integer() {
                    return base.pow(d.to_integer().try_into().ok()?).ok();
                }
                None
            }
        }
    }

    fn render(&self, vars: &Vars, alone: bool) -> String {
        let wrap = |f: &RatFunc| {
            let s = vars.show(f);
            if s.chars().all(|c| c.is_alphanumeric() || c == '_') {
                s
            } else {
                format!("({s})")
            }
        };
        match self {
            Factor::Rational(p) if alone => vars.show(p),
            Factor::Rational(p) => wrap(p),
            Factor::Exp(z) => format!("exp({})", vars.show(z)),
            Factor::Gamma(arg, 1) => format!("Γ({})", vars.show(arg)),
            Factor::Gamma(arg, k) => format!("Γ({})^{k}", vars.show(arg)),
            Factor::Power(b, e) => format!("{}^{}", wrap(b), wrap(e)),
        }
    }
}

/// Factors whose product has certificate value `r` for `m` alone.
fn recognize(m: &DeltaMap, r: &RatFunc) -> Option<Vec<Factor>> {
    let nv = m.nvars();
    if *r == m.neutral() {
        return Some(vec![]);
    }
    let cfg = SolverConfig::default();
    if let Ok(Some(p)) = rational_multiplicative_solve(nv, &[(m.clone(), r.clone())]) {
        return Some(vec![Factor::Rational(p)]);
    }
    match m.kind() {
        MapKind::Derivation => match rational_additive_solve(nv, &[(m.clone(), r.clone())], &cfg) {
            Ok(Some(z)) => Some(vec![Factor::Exp(z)]),
            _ => None,
        },
        MapKind::Shift => shift_factors(m, r),
    }
}

/// `r = c prod (t + b_i)^(e_i)` along `t -> t + 1`.
fn shift_factors(m: &DeltaMap, r: &RatFunc) -> Option<Vec<Factor>> {
    let nv = m.nvars();
    let moved: Vec<usize> = (0..nv).filter(|&v| m.moves(v)).collect();
    let [t] = moved[..] else { return None };
    if !m.action()[t].is_one() {
        return None;
    }
    let tv = RatFunc::var(nv, t);
    let mut out = Vec::new();
    let mut lead = r.clone();
    for (poly, sign) in [(r.num(), 1i64), (r.den(), -1)] {
        for (f, mult) in complete_factors(poly, t, "display").ok()? {
            if f.degree(t) == 0 {
                continue;
            }
            if f.degree(t) != 1 {
                return None;
            }
            let fr = RatFunc::from_poly(f.clone());
            let lc = RatFunc::from_poly(f.lc_in(t));
            let arg = fr.checked_div(&lc).ok()?;
            if (&arg - &tv).involves(t) {
                return None;
            }
            out.push(Factor::Gamma(arg.clone(), sign * mult as i64));
            lead = lead.checked_div(&arg.pow((sign * mult as i64) as i32).ok()?).ok()?;
        }
    }
    if lead.involves(t) {
        return None;
    }
    if !lead.is_one() {
        out.insert(0, Factor::Power(lead, tv));
    }
    Some(out)
}

/// Factors found for all maps at once: a rational element, or `exp(z)`
/// with `z` fixed by every shift times shift-only factors.
fn joint_factors(delta: &DeltaSet, cert: &Certificate) -> Option<Vec<Factor>> {
    let nv = delta.nvars();
    let mut mult = Vec::new();
    let mut add = Vec::new();
    for (name, r) in cert.entries() {
        let m = delta.get(name)?;
        mult.push((m.clone(), r.clone()));
        add.push((m.clone(), if m.is_shift() { RatFunc::zero(nv) } else { r.clone() }));
    }
    if let Ok(Some(p)) = rational_multiplicative_solve(nv, &mult) {
        return Some(if p.is_one() { vec![] } else { vec![Factor::Rational(p)] });
    }
    let z = rational_additive_solve(nv, &add, &SolverConfig::default()).ok()??;
    let mut out = if z.is_zero() { vec![] } else { vec![Factor::Exp(z)] };
    for (m, r) in mult.iter().filter(|(m, _)| m.is_shift()) {
        for f in recognize(m, r)? {
            if !out.contains(&f) {
                out.push(f);
            }
        }
    }
    Some(out)
}

/// A label for the element with certificate `cert`.
pub fn describe(vars: &Vars, delta: &DeltaSet, cert: &Certificate) -> String {
    if let Some(fs) = joint_factors(delta, cert) {
        if product_matches(&fs, delta, cert) {
            return if fs.is_empty() { "1".into() } else { render_product(&fs, vars) };
        }
    }
    let mut per_map = Vec::new();
    let mut all: Vec<Factor> = Vec::new();
    let mut complete = true;
    for (name, r) in cert.entries() {
        let Some(m) = delta.get(name) else {
            return String::new();
        };
        match recognize(m, r) {
            Some(fs) => {
                let label = if fs.is_empty() {
                    "1".to_string()
                } else {
                    render_product(&fs, vars)
                };
                per_map.push(format!("{name}: {label}"));
                for f in fs {
                    if !all.contains(&f) {
                        all.push(f);
                    }
                }
            }
            None => {
                complete = false;
                per_map.push(format!("{name}: {}", vars.show(r)));
            }
        }
    }
    if complete && product_matches(&all, delta, cert) {
        if all.is_empty() {
            return "1".into();
        }
        return render_product(&all, vars);
    }
    per_map.join("; ")
}

fn render_product(fs: &[Factor], vars: &Vars) -> String {
    let alone = fs.len() == 1;
    fs.iter().map(|f| f.render(vars, alone)).collect::<Vec<_>>().join("*")
}

fn product_matches(fs: &[Factor], delta: &DeltaSet, cert: &Certificate) -> bool {
    cert.entries().iter().all(|(name, r)| {
        let Some(m) = delta.get(name) else { return false };
        let mut acc = m.neutral();
        for f in fs {
            match f.value(m) {
                Some(v) => acc = m.combine(&acc, &v),
                None => return false,
            }
        }
        acc == *r
    })
}
