use num_traits::{One, Signed};

use super::poly::{Exps, Poly, Q};
use super::ratfunc::RatFunc;

fn monomial_string(e: &Exps, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

fn abs_coeff_string(c: &Q) -> String {
    let a = c.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Terms in lex order, e.g. `x^2*y - 1/2*x + 3`.
pub fn poly_to_string(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = monomial_string(e, names);
        let abs = c.abs();
        if mono.is_empty() {
            out.push_str(&abs_coeff_string(c));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&abs_coeff_string(c));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// Fractions are shown with an integer primitive denominator, e.g.
/// `(x + 1)/(2*y - 1)`.
pub fn ratfunc_to_string(f: &RatFunc, names: &[String]) -> String {
    if f.den().is_one() {
        return poly_to_string(f.num(), names);
    }
    let den = f.den().primitive_q();
    let num_p = f.num().scale(&den.lc());
    let num = poly_to_string(&num_p, names);
    let num = if num_p.len() > 1 {
        format!("({num})")
    } else {
        num
    };
    let simple_den = den.len() == 1
        && den.lc().is_one()
        && den.terms()[0].0.iter().filter(|&&k| k > 0).count() == 1;
    let den_s = poly_to_string(&den, names);
    if simple_den {
        format!("{num}/{den_s}")
    } else {
        format!("{num}/({den_s})")
    }
}
