//! End-to-end acceptance checks on the worked examples.  Prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use laurent_ore::delta::{dependence_over_constants, ConstantField, DeltaMap, Dependence, MapKind};
use laurent_ore::io::{parse_system, SystemInput};
use laurent_ore::linalg::{linear_reduction, minimal_scalar_equation, MatrixF};
use laurent_ore::scalar::{
    exponential_solutions, hypergeometric_solutions, rational_multiplicative_solve, rational_solutions_matrix,
    ScalarOperator,
};
use laurent_ore::solver::{solve_with_trace, substitute_and_extract, ExtensionCandidate};
use laurent_ore::system::{
    associate_witness, certificate_eigenvalues, iso_test, representations_equivalent, verify_group, Certificate,
    HyperexpGroup, IntegrableSystem, Representation,
};
use laurent_ore::{Error, Poly, RatFunc, SolverConfig, Vars, Q};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: laurent_ore::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Example {
    input: SystemInput,
    sys: IntegrableSystem,
}

impl Example {
    fn load(name: &str) -> Example {
        let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
        let input = parse_system(&text).expect("fixture parses");
        let sys = input.integrable_system().expect("fixture is integrable");
        Example { input, sys }
    }

    fn vars(&self) -> &Vars {
        &self.input.vars
    }

    fn f(&self, s: &str) -> RatFunc {
        self.vars().parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    fn matrix(&self, rows: &[&[&str]]) -> MatrixF {
        MatrixF::from_rows(rows.iter().map(|r| r.iter().map(|s| self.f(s)).collect()).collect(), self.vars().len())
    }

    /// A group from certificate pairs and vector columns.
    fn group(&self, cert: &[(&str, &str)], cols: &[&[&str]]) -> HyperexpGroup {
        let cols: Vec<Vec<RatFunc>> = cols.iter().map(|c| c.iter().map(|s| self.f(s)).collect()).collect();
        HyperexpGroup {
            cert: Certificate::from_pairs(cert.iter().map(|(n, v)| (n.to_string(), self.f(v))).collect()),
            vectors: MatrixF::from_cols(&cols, self.sys.dim(), self.vars().len()),
        }
    }

    fn map(&self, name: &str) -> &DeltaMap {
        self.sys.map(name).expect("known map")
    }

    fn solve(&self, order: Option<&[&str]>) -> laurent_ore::Result<(Representation, Vec<laurent_ore::solver::Stage>)> {
        let cfg = SolverConfig {
            order: order.map(|o| o.iter().map(|s| s.to_string()).collect()),
            ..SolverConfig::default()
        };
        solve_with_trace(&self.sys, &cfg)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t0 = Instant::now();
    let out = f();
    (out, t0.elapsed())
}

/// Same groups up to associates and constant spans, each group verified.
fn matches(sys: &IntegrableSystem, got: &Representation, want: &Representation) -> Result<(), String> {
    for (i, g) in want.groups.iter().enumerate() {
        ensure!(ok(verify_group(sys, g))?.passed(), "expected group {} does not verify", i + 1);
    }
    for (i, g) in got.groups.iter().enumerate() {
        ensure!(ok(verify_group(sys, g))?.passed(), "computed group {} does not verify", i + 1);
    }
    ensure!(
        ok(representations_equivalent(sys.delta(), got, want))?,
        "representation differs from the expected one"
    );
    Ok(())
}

fn example1_expected(ex: &Example) -> Representation {
    Representation {
        groups: vec![
            ex.group(&[("sn", "n")], &[&["(n+1)/x", "(1+x)*n/x^2", "(n*x+m^2)/x^2"]]),
            ex.group(&[("sn", "x")], &[&["0", "0", "1"]]),
        ],
    }
}

fn criterion1() -> Outcome {
    let ex = Example::load("example1_associated");
    let (res, dt) = timed(|| ex.solve(None));
    let (rep, _) = ok(res)?;
    ensure!(rep.len() == 2, "expected 2 groups, got {}", rep.len());
    matches(&ex.sys, &rep, &example1_expected(&ex))?;
    ensure!(dt < Duration::from_secs(10), "took {dt:?}");
    Ok(format!("2 groups in {:.2?}", dt))
}

fn example2_expected(ex: &Example) -> Representation {
    Representation {
        groups: vec![
            ex.group(&[("s", "1"), ("d", "0")], &[&["2", "y", "1/x", "1"]]),
            ex.group(&[("s", "1"), ("d", "2")], &[&["1/y+2", "1", "2/x", "2"]]),
            ex.group(&[("s", "e"), ("d", "2")], &[&["1/y+2*e", "e", "2/x", "2*e"]]),
            ex.group(&[("s", "e"), ("d", "0")], &[&["1+e", "y*e", "1/x", "e"]]),
        ],
    }
}

/// The reduced system `phi(D) = P D` obtained by substituting `h V D`
/// with `phi(h)/h = r` (shift) or `delta(h)/h = r` (derivation).
fn reduced(ex: &Example, g: &HyperexpGroup, phi: &str, r: &str, done: &[&str]) -> Result<MatrixF, String> {
    let maps: Vec<DeltaMap> = done.iter().map(|n| ex.map(n).clone()).collect();
    let cf = ConstantField::new(ex.vars().len(), &maps);
    let ext = ExtensionCandidate {
        base: g.cert.clone(),
        map: phi.to_string(),
        value: ex.f(r),
    };
    let b = ex.sys.matrix(phi).expect("matrix");
    let rs = ok(substitute_and_extract(g, &ext, b, ex.map(phi), &cf))?;
    let red = ok(linear_reduction(&rs.u, &rs.w, &rs.map))?;
    ensure!(red.s.is_identity(), "the reduction eliminated coordinates");
    Ok(cf.lift_matrix(&red.p))
}

fn criterion2() -> Outcome {
    let ex = Example::load("example2_associated");
    let (res, dt) = timed(|| ex.solve(None));
    let (rep, stages) = ok(res)?;
    ensure!(rep.len() == 4, "expected 4 groups, got {}", rep.len());
    matches(&ex.sys, &rep, &example2_expected(&ex))?;

    // first stage: {(1, V1), (e^x, V2)} for the shift alone
    let v1 = ex.group(&[("s", "1")], &[&["1/y", "1", "0", "0"], &["1", "0", "1/x", "1"]]);
    let v2 = ex.group(&[("s", "e")], &[&["1/(y*e)", "1", "0", "0"], &["1", "0", "1/(x*e)", "1"]]);
    let shift_only = ok(ex.sys.subsystem(&["s"]))?;
    let first = Representation { groups: stages[0].groups.clone() };
    matches(&shift_only, &first, &Representation { groups: vec![v1.clone(), v2.clone()] })
        .map_err(|e| format!("first stage: {e}"))?;

    // the two displayed 2x2 systems
    let p1 = reduced(&ex, &v1, "d", "0", &["s"])?;
    ensure!(p1 == ex.matrix(&[&["0", "1"], &["-4/(2*y-1)", "4*y/(2*y-1)"]]), "first reduced system differs");
    let p2 = reduced(&ex, &v2, "d", "1", &["s"])?;
    ensure!(
        p2 == ex.matrix(&[&["-1", "1"], &["-4/(2*y-1)", "(2*y+1)/(2*y-1)"]]),
        "second reduced system differs"
    );
    ensure!(dt < Duration::from_secs(30), "took {dt:?}");
    Ok(format!("4 groups in {:.2?}, stage 1 and both reduced systems reproduced", dt))
}

fn criterion3() -> Outcome {
    let ex = Example::load("example3_associated");
    let (res, dt) = timed(|| ex.solve(None));
    let (rep, stages) = ok(res)?;
    ensure!(rep.len() == 1, "expected 1 group, got {}", rep.len());
    let want_cert = Certificate::from_pairs(vec![
        ("dx".into(), ex.f("1/y")),
        ("sk".into(), ex.f("k")),
        ("dy".into(), ex.f("-x/y^2")),
    ]);
    ensure!(rep.groups[0].cert == want_cert, "certificate {:?}", rep.groups[0].cert);
    let w = ex.group(
        &[("dx", "1/y"), ("sk", "k"), ("dy", "-x/y^2")],
        &[&["k*y/(x+k)", "y/(x+k)", "0"], &["0", "0", "k*y/(x+y)"], &["x/(y+k)", "0", "x^2/(y+k)"]],
    );
    matches(&ex.sys, &rep, &Representation { groups: vec![w] })?;

    // stage 1: {(e^(x/y), V)}
    let v = ex.group(&[("dx", "1/y")], &[&["k/(x+k)", "1/(x+k)", "0"], &["0", "0", "1/(x+y)"], &["x", "0", "x^2"]]);
    let dx_only = ok(ex.sys.subsystem(&["dx"]))?;
    let first = Representation { groups: stages[0].groups.clone() };
    matches(&dx_only, &first, &Representation { groups: vec![v.clone()] }).map_err(|e| format!("stage 1: {e}"))?;

    // stage 2: the diagonal shift system, then {(e^(x/y) Gamma(k), V U)}
    let p = reduced(&ex, &v, "sk", "1", &["dx"])?;
    let want = ex.matrix(&[&["k", "0", "0"], &["0", "k+1", "0"], &["0", "0", "k*(y+k)/(y+k+1)"]]);
    ensure!(p == want, "reduced shift system differs");
    let vu = ex.group(
        &[("dx", "1/y"), ("sk", "k")],
        &[&["k/(x+k)", "1/(x+k)", "0"], &["0", "0", "k/(x+y)"], &["x/(y+k)", "0", "x^2/(y+k)"]],
    );
    let two = ok(ex.sys.subsystem(&["dx", "sk"]))?;
    let second = Representation { groups: stages[1].groups.clone() };
    matches(&two, &second, &Representation { groups: vec![vu] }).map_err(|e| format!("stage 2: {e}"))?;
    ensure!(dt < Duration::from_secs(30), "took {dt:?}");
    Ok(format!("1 group in {:.2?}, stage checkpoints reproduced", dt))
}

/// The certificate with one entry disturbed.
fn disturb_certificate(ex: &Example, c: &Certificate, k: usize) -> Certificate {
    let (name, r) = &c.entries()[k];
    let r2 = if ex.map(name).is_shift() { r.scale(&Q::from_integer(2.into())) } else { r + &RatFunc::one(r.nvars()) };
    c.with(name, r2)
}

fn criterion4() -> Outcome {
    let mut checked = 0;
    let mut mutants = 0;
    for (name, orders) in [
        ("example1_associated", vec![vec!["sn"]]),
        ("example2_associated", vec![vec!["s", "d"], vec!["d", "s"]]),
        ("example3_associated", vec![vec!["dx", "sk", "dy"], vec!["dy", "sk", "dx"], vec!["sk", "dy", "dx"]]),
    ] {
        let ex = Example::load(name);
        for order in orders {
            let (_, stages) = ok(ex.solve(Some(&order)))?;
            for st in &stages {
                let names: Vec<&str> = st.maps.iter().map(|s| s.as_str()).collect();
                let sub = ok(ex.sys.subsystem(&names))?;
                for g in &st.groups {
                    ensure!(ok(verify_group(&sub, g))?.passed(), "{name} {order:?}: a group after {names:?} fails");
                    checked += 1;
                    for k in 0..g.cert.len() {
                        let bad = HyperexpGroup { cert: disturb_certificate(&ex, &g.cert, k), vectors: g.vectors.clone() };
                        ensure!(!ok(verify_group(&sub, &bad))?.passed(), "{name}: certificate mutant {k} accepted");
                        mutants += 1;
                    }
                    for i in 0..g.vectors.rows() {
                        for j in 0..g.vectors.cols() {
                            // a non-constant bump, so the mutant is never a rescaled solution
                            let mut m = g.vectors.clone();
                            m[(i, j)] = &m[(i, j)] + &RatFunc::from_poly(Poly::var(m.nvars(), 0));
                            let bad = HyperexpGroup { cert: g.cert.clone(), vectors: m };
                            ensure!(!ok(verify_group(&sub, &bad))?.passed(), "{name}: vector mutant ({i}, {j}) accepted");
                            mutants += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} stage groups verified, {mutants} mutants caught"))
}

fn criterion5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut report = Vec::new();
    let mut failures = Vec::new();
    for name in ["example1", "example2", "example3"] {
        for kind in ["associated", "structure"] {
            let ex = Example::load(&format!("{name}_{kind}"));
            ensure!(ex.input.integrable_system().is_ok(), "{name}_{kind} rejected");
        }
        let ex = Example::load(&format!("{name}_associated"));
        let nv = ex.vars().len();
        let mut rejected = 0;
        for _ in 0..20 {
            let mut mats = ex.sys.matrices().to_vec();
            let k = rng.gen_range(0..mats.len());
            let (i, j) = (rng.gen_range(0..ex.sys.dim()), rng.gen_range(0..ex.sys.dim()));
            let var = rng.gen_range(0..nv);
            let c = Q::from_integer(rng.gen_range(1..=9).into());
            let bump = RatFunc::from_poly(Poly::monomial(nv, var, rng.gen_range(0..=2), c));
            mats[k][(i, j)] = &mats[k][(i, j)] + &bump;
            let res = IntegrableSystem::new(ex.vars().clone(), ex.sys.delta().clone(), mats);
            if matches!(res, Err(Error::NotIntegrable { .. })) {
                rejected += 1;
            }
        }
        report.push(format!("{name}: {rejected}/20"));
        if rejected != 20 {
            let why = if ex.sys.delta().len() == 1 { " (one operator: no pairwise conditions exist)" } else { "" };
            failures.push(format!("{name}: {rejected}/20 perturbations rejected{why}"));
        }
    }
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(report.join(", "))
}

/// Coefficient comparison over Q: is there a nonzero rational relation?
fn brute_force_dependent(fs: &[RatFunc]) -> bool {
    let nv = fs[0].nvars();
    let mut den = Poly::one(nv);
    for f in fs {
        den = laurent_ore::ratfunc::lcm(&den, f.den());
    }
    let polys: Vec<Poly> = fs.iter().map(|f| f.num() * &den.div_exact(f.den()).expect("lcm")).collect();
    let mut monos: Vec<Vec<u32>> = Vec::new();
    for p in &polys {
        for (e, _) in p.terms() {
            let e: Vec<u32> = e.iter().map(|&x| x as u32).collect();
            if !monos.contains(&e) {
                monos.push(e);
            }
        }
    }
    // rows: monomials, columns: functions
    let mut rows: Vec<Vec<Q>> = monos
        .iter()
        .map(|m| {
            polys
                .iter()
                .map(|p| {
                    p.terms()
                        .iter()
                        .find(|(e, _)| e.iter().map(|&x| x as u32).collect::<Vec<_>>() == *m)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(Q::zero)
                })
                .collect()
        })
        .collect();
    let cols = fs.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rank += 1;
    }
    rank < cols
}

fn random_poly(rng: &mut ChaCha8Rng, nv: usize) -> Poly {
    let mut p = Poly::zero(nv);
    for _ in 0..rng.gen_range(1..=3) {
        let mut m = Poly::one(nv);
        for v in 0..nv {
            for _ in 0..rng.gen_range(0..=1) {
                m = &m * &Poly::var(nv, v);
            }
        }
        let c: i64 = rng.gen_range(-5..=5);
        p = &p + &m.scale(&Q::from_integer(c.into()));
    }
    p
}

fn criterion6() -> Outcome {
    let vars = Vars::new(&["x", "y"]).unwrap();
    let maps = vec![
        DeltaMap::from_pairs("s", MapKind::Shift, &vars, &[("x", Q::one())]).unwrap(),
        DeltaMap::from_pairs("d", MapKind::Derivation, &vars, &[("y", Q::one())]).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut cases, mut dependent) = (0, 0);
    while cases < 60 {
        let s = rng.gen_range(1..=3);
        let mut fs: Vec<RatFunc> = Vec::new();
        for _ in 0..s {
            let num = random_poly(&mut rng, 2);
            let den = random_poly(&mut rng, 2);
            if den.is_zero() {
                continue;
            }
            fs.push(RatFunc::new(num, den).expect("nonzero denominator"));
        }
        if fs.is_empty() {
            continue;
        }
        if fs.len() >= 2 && rng.gen_bool(0.5) {
            // make the last one a rational combination of the others
            let mut acc = RatFunc::zero(2);
            for f in &fs[..fs.len() - 1] {
                let c = Q::from_integer(rng.gen_range(-3i64..=3).into());
                acc = &acc + &f.scale(&c);
            }
            *fs.last_mut().unwrap() = acc;
        }
        let want = brute_force_dependent(&fs);
        let got = ok(dependence_over_constants(&fs, &maps, 2))?;
        match got {
            Dependence::Independent => ensure!(!want, "case {cases}: missed a relation among {fs:?}"),
            Dependence::Dependent(d) => {
                ensure!(want, "case {cases}: spurious relation among {fs:?}");
                let mut sum = RatFunc::zero(2);
                for (c, f) in d.iter().zip(&fs) {
                    ensure!(c.constant_value().is_some(), "case {cases}: relation is not constant");
                    sum = &sum + &(c * f);
                }
                ensure!(sum.is_zero() && d.iter().any(|c| !c.is_zero()), "case {cases}: relation does not verify");
                dependent += 1;
            }
        }
        cases += 1;
    }
    Ok(format!("{cases} cases, {dependent} dependent, all agree"))
}

fn criterion7() -> Outcome {
    let cfg = SolverConfig::default();
    // recurrence of the first coordinate of Example 1
    let ex = Example::load("example1_associated");
    let sn = ex.map("sn").clone();
    let a = &ex.sys.matrices()[0];
    let eq = minimal_scalar_equation(a, &sn, 0);
    let den = ex.f("2*(-n-3+2*x+2*n*x)");
    let want = vec![
        -&ex.f("n*(8*x^2+4-12*x-8*n*x+4*x^2*n-2*n^2*x+5*n+n^2)").checked_div(&den).unwrap(),
        ex.f("4*x^2*n+11-18*n*x-6*n^2*x-12*x+14*n+3*n^2+4*x^2").checked_div(&den).unwrap(),
        ex.f("1"),
    ];
    ensure!(eq.coeffs == want, "scalar recurrence differs from the displayed one");
    let t = ex.vars().index("n").unwrap();
    let op = ok(ScalarOperator::new(sn.clone(), eq.coeffs.clone()))?;
    let classes = ok(hypergeometric_solutions(&op, t, &cfg))?;
    ensure!(classes.len() == 1, "expected one hypergeometric class, got {}", classes.len());
    let ratio = ok(sn.quotient(&classes[0].cert, &ex.f("n")))?;
    ensure!(
        ok(rational_multiplicative_solve(ex.vars().len(), &[(sn.clone(), ratio)]))?.is_some(),
        "class is not that of Gamma(n)"
    );
    // rational solutions after Z = Gamma(n) Y
    let twisted = a.scale(&ex.f("1/n"));
    let basis = ok(rational_solutions_matrix(&twisted, &sn, t, &cfg))?;
    ensure!(basis.len() == 1, "expected a one-element basis, got {}", basis.len());
    let v = [ex.f("(n+1)/x"), ex.f("(1+x)*n/x^2"), ex.f("(n*x+m^2)/x^2")];
    let c = basis[0][0].checked_div(&v[0]).unwrap();
    ensure!(!c.involves(t), "basis is not a constant multiple of V");
    ensure!(basis[0].iter().zip(&v).all(|(b, w)| *b == &c * w), "basis is not a constant multiple of V");

    // the two reduced systems of Example 2, as equations in y over Q(e)
    let vars = Vars::new(&["y", "e"]).unwrap();
    let dy = DeltaMap::from_pairs("d", MapKind::Derivation, &vars, &[("y", Q::one())]).unwrap();
    let m = |rows: &[[&str; 2]]| {
        MatrixF::from_rows(rows.iter().map(|r| r.iter().map(|s| vars.parse(s).unwrap()).collect()).collect(), 2)
    };
    let mut found = Vec::new();
    for (p, want) in [
        (m(&[["0", "1"], ["-4/(2*y-1)", "4*y/(2*y-1)"]]), vec!["0", "2"]),
        (m(&[["-1", "1"], ["-4/(2*y-1)", "(2*y+1)/(2*y-1)"]]), vec!["-1", "1"]),
    ] {
        let eq = minimal_scalar_equation(&p, &dy, 0);
        ensure!(eq.order() == 2, "reduced system is not cyclic at the first coordinate");
        let op = ok(ScalarOperator::new(dy.clone(), eq.coeffs))?;
        let mut certs: Vec<String> =
            ok(exponential_solutions(&op, 0, &cfg))?.iter().map(|c| vars.show(&c.cert)).collect();
        certs.sort();
        ensure!(certs == want, "exponential classes {certs:?}, expected {want:?}");
        found.push(format!("{{{}}}", certs.join(", ")));
    }
    Ok(format!("Gamma(n) class, basis V, exponential classes {}", found.join(" and ")))
}

fn criterion8() -> Outcome {
    let ex = Example::load("example1_associated");
    let delta = ex.sys.delta();
    let (rep, _) = ok(ex.solve(None))?;
    let e0 = ok(certificate_eigenvalues(delta, &rep.groups[0].cert))?;
    let e1 = ok(certificate_eigenvalues(delta, &rep.groups[1].cert))?;
    ensure!(ok(iso_test(delta, &e0, &e1))?.is_none(), "the two groups test isomorphic");

    // an associate of Gamma(n): n Gamma(n), certificate n sigma(n)/n
    let sn = ex.map("sn");
    let p = ex.f("n");
    let scaled = &ex.f("n") * &sn.apply(&p).checked_div(&p).unwrap();
    let c_gamma = Certificate::from_pairs(vec![("sn".into(), ex.f("n"))]);
    let c_scaled = Certificate::from_pairs(vec![("sn".into(), scaled)]);
    let f = ok(certificate_eigenvalues(delta, &c_gamma))?;
    let g = ok(certificate_eigenvalues(delta, &c_scaled))?;
    let Some(r) = ok(iso_test(delta, &f, &g))? else {
        return Err("the associate pair tests non-isomorphic".into());
    };
    // the witness satisfies sigma(r) = (f/g) r and is n up to a constant
    let ratio = f[0].1.checked_div(&g[0].1).unwrap();
    ensure!(sn.apply(&r) == &ratio * &r, "witness does not satisfy its equation");
    let up_to = [r.checked_div(&p).unwrap(), (&r * &p)];
    ensure!(up_to.iter().any(|x| x.constant_value().is_some()), "witness {} is not n^(+-1)", ex.vars().show(&r));
    ensure!(
        ok(associate_witness(delta, &c_scaled, &c_gamma))?.is_some(),
        "associate witness not found for the scaled certificate"
    );

    // final representations are pairwise inequivalent
    let mut pairs = 0;
    for name in ["example1_associated", "example2_associated", "example3_associated"] {
        let ex = Example::load(name);
        let (rep, _) = ok(ex.solve(None))?;
        let delta = ex.sys.delta();
        for i in 0..rep.len() {
            for j in i + 1..rep.len() {
                let a = ok(certificate_eigenvalues(delta, &rep.groups[i].cert))?;
                let b = ok(certificate_eigenvalues(delta, &rep.groups[j].cert))?;
                ensure!(ok(iso_test(delta, &a, &b))?.is_none(), "{name}: groups {i} and {j} are isomorphic");
                pairs += 1;
            }
        }
    }
    Ok(format!("witness {} recovered, {pairs} final pairs inequivalent", ex.vars().show(&r)))
}

fn permutations(items: &[&'static str]) -> Vec<Vec<&'static str>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

fn criterion9() -> Outcome {
    let t0 = Instant::now();
    let mut runs = 0;
    for (name, maps) in [("example2_associated", vec!["s", "d"]), ("example3_associated", vec!["dx", "sk", "dy"])] {
        let ex = Example::load(name);
        let (base, _) = ok(ex.solve(None))?;
        for order in permutations(&maps) {
            let (rep, _) = ok(ex.solve(Some(&order))).map_err(|e| format!("{name} {order:?}: {e}"))?;
            ensure!(
                ok(representations_equivalent(ex.sys.delta(), &rep, &base))?,
                "{name}: order {order:?} gives a different representation"
            );
            runs += 1;
        }
    }
    let dt = t0.elapsed();
    ensure!(dt < Duration::from_secs(300), "took {dt:?}");
    Ok(format!("{runs} orders equivalent in {:.2?}", dt))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Example 1 end to end", criterion1),
        ("Example 2 end to end", criterion2),
        ("Example 3 end to end", criterion3),
        ("every emitted group verifies, mutants are caught", criterion4),
        ("integrability of fixtures and perturbations", criterion5),
        ("dependence over constants against brute force", criterion6),
        ("scalar solvers on the worked examples", criterion7),
        ("isomorphism and disjointness", criterion8),
        ("order robustness", criterion9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
