//! Decimal formatting helpers for CSV outputs.

/// Format `x` with at most `digits` significant digits, `%g` style: plain
/// decimal notation for moderate magnitudes, scientific otherwise, trailing
/// zeros trimmed. Non-finite values print as `NaN`, `inf`, `-inf`.
pub fn sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    let negative = mantissa.starts_with('-');
    let mant_digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    if !(-5..digits as i32).contains(&exp) {
        let m = trim_fraction(mantissa);
        return format!("{m}e{exp}");
    }
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(&mant_digits);
    } else {
        let int_len = exp as usize + 1;
        out.push_str(&mant_digits[..int_len]);
        if int_len < mant_digits.len() {
            out.push('.');
            out.push_str(&mant_digits[int_len..]);
        }
    }
    trim_fraction(&out).to_string()
}

/// Nine significant digits, the precision used for feature tables.
pub fn sig9(x: f64) -> String {
    sig(x, 9)
}

/// Round to a fixed number of decimals (used to keep generated logs compact).
pub fn round_to(x: f64, decimals: i32) -> f64 {
    let f = 10f64.powi(decimals);
    (x * f).round() / f
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
