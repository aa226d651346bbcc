//! Exact arithmetic: rational (Laurent) polynomials, factorization, real and
//! unit-circle root isolation, cyclotomic evaluation, certified intervals and
//! certified signs of real algebraic expressions.

pub mod cyclotomic;
pub mod expr;
pub mod factor;
pub mod interval;
pub mod laurent;
pub mod poly;
pub mod roots;

pub use cyclotomic::{eval_root_of_unity, CyclotomicElement};
pub use expr::{certified_sign, Expr};
pub use factor::{factor_poly, factor_rational};
pub use interval::Interval;
pub use laurent::LaurentPoly;
pub use poly::Poly;
pub use roots::{unit_circle_roots, AlgebraicAngle, RealRoot, UnitCircleRoots, UnitPoint};

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Greatest common divisor of Laurent polynomials, normalized to a primitive
/// integer polynomial with minimum exponent 0 and positive leading
/// coefficient. `gcd_poly(f, 0)` is the normalized `f`.
pub fn gcd_poly(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    let (_, a) = f.to_poly();
    let (_, b) = g.to_poly();
    let d = a.gcd(&b);
    if d.is_zero() {
        return LaurentPoly::zero();
    }
    LaurentPoly::from_poly(&d.primitive(), 0)
}

/// Renders `(exponent, coefficient)` pairs in descending order, e.g. `2t^2-5t+2`.
pub(crate) fn format_terms<'a, I>(terms: I, var: &str) -> String
where
    I: Iterator<Item = (i64, &'a Rational)>,
{
    let mut items: Vec<(i64, &Rational)> = terms.filter(|(_, c)| !c.is_zero()).collect();
    if items.is_empty() {
        return "0".to_string();
    }
    items.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out = String::new();
    for (i, (e, c)) in items.into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if e == 0 {
            out.push_str(&crate::format_rational(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else if a.is_integer() {
            out.push_str(&format!("{a}{mono}"));
        } else {
            out.push_str(&format!("{}*{mono}", crate::format_rational(&a)));
        }
    }
    out
}
