use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntPoly;
use crate::error::Error;

/// Parses signed integer-coefficient expressions such as `"x^10 - x^2 - 1"`,
/// `"3x^2+ 2*x -7"` or `"-x"`. Whitespace is ignored, repeated exponents are summed,
/// and any single-letter variable name is accepted as long as it is used consistently.
impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self, Error> {
        let fail = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(fail("empty input"));
        }

        let mut terms: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut var: Option<char> = None;
        let mut pos = 0;
        let mut first = true;

        while pos < chars.len() {
            let negative = match chars[pos] {
                '+' => {
                    pos += 1;
                    false
                }
                '-' => {
                    pos += 1;
                    true
                }
                _ if first => false,
                c => return Err(fail(&format!("expected '+' or '-', found '{c}'"))),
            };
            first = false;

            let digits_start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff = if pos > digits_start {
                let text: String = chars[digits_start..pos].iter().collect();
                Some(text.parse::<BigInt>().map_err(|_| fail("bad coefficient"))?)
            } else {
                None
            };

            if pos < chars.len() && chars[pos] == '*' {
                if coeff.is_none() {
                    return Err(fail("'*' without a coefficient"));
                }
                pos += 1;
                if pos >= chars.len() || !chars[pos].is_ascii_alphabetic() {
                    return Err(fail("'*' must be followed by the variable"));
                }
            }

            let mut exponent = 0usize;
            if pos < chars.len() && chars[pos].is_ascii_alphabetic() {
                let v = chars[pos];
                match var {
                    Some(existing) if existing != v => {
                        return Err(fail("more than one variable"));
                    }
                    _ => var = Some(v),
                }
                pos += 1;
                exponent = 1;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    let start = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(fail("missing exponent after '^'"));
                    }
                    let text: String = chars[start..pos].iter().collect();
                    exponent = text.parse().map_err(|_| fail("exponent out of range"))?;
                }
            } else if coeff.is_none() {
                return Err(fail("empty term"));
            }

            let mut value = coeff.unwrap_or_else(|| BigInt::from(1));
            if negative {
                value = -value;
            }
            *terms.entry(exponent).or_insert_with(BigInt::zero) += value;
        }

        let degree = terms.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        for (e, c) in terms {
            coeffs[e] = c;
        }
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_the_documented_forms() {
        let h: IntPoly = "x^10 - x^2 - 1".parse().unwrap();
        assert_eq!(h, IntPoly::from_i64(&[-1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1]));
        let g: IntPoly = "  3x^2+2 * x\t-7 ".parse().unwrap();
        assert_eq!(g, IntPoly::from_i64(&[-7, 2, 3]));
        assert_eq!("-x".parse::<IntPoly>().unwrap(), IntPoly::from_i64(&[0, -1]));
        assert_eq!("t^3 - t".parse::<IntPoly>().unwrap(), IntPoly::from_i64(&[0, -1, 0, 1]));
        assert_eq!("x^2 - x^2".parse::<IntPoly>().unwrap(), IntPoly::zero());
        assert_eq!("0".parse::<IntPoly>().unwrap(), IntPoly::zero());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x^", "x + y", "2**x", "x -", "x^2 x", "+", "1/2x"] {
            assert!(bad.parse::<IntPoly>().is_err(), "{bad:?} should not parse");
        }
    }
}
