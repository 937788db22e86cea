//! Exact polynomial and rational-function arithmetic over Q.

pub mod factor;
pub mod fpoly;
pub mod gcd;
pub mod parse;
pub mod poly;
pub mod print;
pub mod qpoly;
#[allow(clippy::module_inception)]
pub mod ratfunc;
pub mod roots;

pub use factor::{factor_univariate, Factor, FactorKind, Factorization};
pub use fpoly::{partial_fractions, FPoly, PartialFractionTerm, PartialFractions};
pub use gcd::{gcd, gcd_in, lcm};
pub use parse::{parse_poly, parse_ratfunc, parse_rational};
pub use poly::{q, q_frac, Poly, Q};
pub use qpoly::QPoly;
pub use ratfunc::RatFunc;
pub use roots::roots_in_field;

use crate::error::{Error, Result};

/// The ordered, named variables of a session.  Parameters are ordinary
/// variables on which no map acts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vars {
    names: Vec<String>,
}

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Vars> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidInput(format!("bad variable name '{n}'")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate variable '{n}'")));
            }
        }
        Ok(Vars { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parse(&self, src: &str) -> Result<RatFunc> {
        parse_ratfunc(src, &self.names)
    }

    pub fn show(&self, f: &RatFunc) -> String {
        f.to_string_with(&self.names)
    }

    pub fn show_poly(&self, p: &Poly) -> String {
        print::poly_to_string(p, &self.names)
    }
}
