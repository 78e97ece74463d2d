//! CSV formatting conventions: 12 significant digits for floats, `num/den`
//! for exact rationals.

use num_rational::BigRational;

/// `%.12g`-style rendering: 12 significant digits, trailing zeros removed,
/// scientific notation outside `1e-5 ≤ |x| < 1e12`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.11e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `num/den`, or just `num` for integers.
pub fn fmt_rational(q: &BigRational) -> String {
    q.to_string()
}

/// Joins fields with commas and terminates the row with `\n`.
pub fn csv_row<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut out = fields.into_iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().join(",");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_rendering() {
        assert_eq!(fmt_f64(0.75), "0.75");
        assert_eq!(fmt_f64(400.0), "400");
        assert_eq!(fmt_f64(11.0 / 14.0), "0.785714285714");
        assert_eq!(fmt_f64(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_f64(2.0f64.sqrt()), "1.41421356237");
        assert_eq!(fmt_f64(1.5e-7), "1.5e-07");
        assert_eq!(fmt_f64(-2.5e13), "-2.5e+13");
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(123456789012.0), "123456789012");
    }

    #[test]
    fn rational_rendering() {
        let q = BigRational::new(3.into(), 4.into());
        assert_eq!(fmt_rational(&q), "3/4");
        assert_eq!(fmt_rational(&BigRational::from_integer(400.into())), "400");
    }

    #[test]
    fn rows() {
        assert_eq!(csv_row(["a", "b"]), "a,b\n");
    }
}
