//! Partial univariate factorization over the field of the other variables:
//! squarefree decomposition, then every linear factor.

use num_traits::Signed;

use super::gcd::{primitive_in, squarefree_decomposition};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::roots::roots_in_field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// Degree one.
    Linear,
    /// Degree two or three without roots, hence irreducible.
    Irreducible,
    /// Degree four or more without roots; may still split.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: Poly,
    pub multiplicity: u32,
    pub kind: FactorKind,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub var: usize,
    /// The factor free of `var`, so that `p = unit * prod f^m`.
    pub unit: Poly,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.factors.iter().all(|f| f.kind != FactorKind::Unverified)
    }

    pub fn all_linear(&self) -> bool {
        self.factors.iter().all(|f| f.kind == FactorKind::Linear)
    }

    /// Roots of the linear factors with their multiplicities.
    pub fn roots(&self) -> Vec<(RatFunc, u32)> {
        self.factors
            .iter()
            .filter(|f| f.kind == FactorKind::Linear)
            .map(|f| (linear_root(&f.poly, self.var), f.multiplicity))
            .collect()
    }

    /// Factors other than the linear ones.
    pub fn nonlinear(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter().filter(|f| f.kind != FactorKind::Linear)
    }

    pub fn product(&self) -> Poly {
        let mut acc = self.unit.clone();
        for f in &self.factors {
            acc = &acc * &f.poly.pow(f.multiplicity);
        }
        acc
    }
}

/// The root of a polynomial of degree one in `var`.
pub fn linear_root(p: &Poly, var: usize) -> RatFunc {
    let c = p.coeffs_in(var);
    assert_eq!(c.len(), 2, "not a linear polynomial");
    RatFunc::new(-&c[0], c[1].clone()).expect("nonzero leading coefficient")
}

/// Integer-primitive in the other variables, with positive lex-leading
/// coefficient of its leading part in `var`.
pub fn normalize_factor(p: &Poly, var: usize) -> Poly {
    let pp = primitive_in(p, var).primitive_q();
    if pp.lc_in(var).lc().is_negative() {
        -&pp
    } else {
        pp
    }
}

/// The linear factor `den * var - num` vanishing at `root`.
pub fn linear_factor(root: &RatFunc, var: usize) -> Poly {
    let nv = root.nvars();
    let f = &(root.den() * &Poly::var(nv, var)) - root.num();
    normalize_factor(&f, var)
}

pub fn factor_univariate(p: &Poly, var: usize) -> Factorization {
    assert!(!p.is_zero(), "cannot factor zero");
    let mut factors = Vec::new();
    for (sq, mult) in squarefree_decomposition(p, var) {
        let mut rest = sq.clone();
        for r in roots_in_field(&sq, var) {
            let lf = linear_factor(&r, var);
            rest = rest.div_exact(&lf).expect("linear factor divides");
            factors.push(Factor {
                poly: lf,
                multiplicity: mult,
                kind: FactorKind::Linear,
            });
        }
        let d = rest.degree(var);
        if d > 0 {
            let kind = if d <= 3 {
                FactorKind::Irreducible
            } else {
                FactorKind::Unverified
            };
            factors.push(Factor {
                poly: normalize_factor(&rest, var),
                multiplicity: mult,
                kind,
            });
        }
    }
    factors.sort_by(|a, b| (a.poly.degree(var), &a.poly).cmp(&(b.poly.degree(var), &b.poly)));
    let mut prod = Poly::one(p.nvars());
    for f in &factors {
        prod = &prod * &f.poly.pow(f.multiplicity);
    }
    let unit = p.div_exact(&prod).expect("factors divide the input");
    Factorization {
        var,
        unit,
        factors,
    }
}
