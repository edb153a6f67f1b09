//! Text forms shared by every output format.

use farey_mmd::BigRational;

/// `x` with exactly 17 significant digits in positional notation, which is
/// enough for the text to parse back to the same `f64`.
pub fn real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let sign = if x.is_sign_negative() && x != 0.0 { "-" } else { "" };
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{}{}", digits, "0".repeat(point - digits.len()))
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    };
    format!("{sign}{body}")
}

/// `p/q`, including `0/1` and `q = 1`.
pub fn rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Columns padded to a common width, two spaces apart.
pub fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_owned() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(real(1.0 / 6.0), "0.16666666666666666");
        assert_eq!(real(0.471_404_520_791_031_7), "0.47140452079103168");
        assert_eq!(real(1.0), "1.0000000000000000");
        assert_eq!(real(3f64.sqrt()), "1.7320508075688772");
        assert_eq!(real(0.0), "0.0000000000000000");
        assert_eq!(real(-2.5e-5), "-0.000025000000000000001");
        assert_eq!(real(1.5e20), "150000000000000000000");
        assert_eq!(real(12345.678), "12345.678000000000");
    }

    #[test]
    fn rationals_always_have_a_denominator() {
        assert_eq!(rational(&BigRational::new(5.into(), 36.into())), "5/36");
        assert_eq!(rational(&BigRational::from_integer(0.into())), "0/1");
        assert_eq!(rational(&BigRational::new(6.into(), 3.into())), "2/1");
    }

    #[test]
    fn aligned_columns() {
        let rows = vec![vec!["1".to_owned(), "long".to_owned()], vec!["22".to_owned(), "x".to_owned()]];
        assert_eq!(aligned(&["a", "b"], &rows), "a   b\n1   long\n22  x\n");
    }

    #[test]
    fn reals_round_trip() {
        for &x in &[1.0 / 3.0, 2f64.sqrt(), 1e-12 / 7.0, 6.02e23, 0.1 + 0.2, f64::MIN_POSITIVE] {
            assert_eq!(real(x).parse::<f64>().unwrap(), x);
        }
    }
}
