//! Parsers for the compact list syntaxes accepted on the command line and in query strings.

use angular_support::{Error, Result};

fn bad(what: &str, text: &str) -> Error {
    Error::InvalidParameter(format!("cannot parse {what} from {text:?}"))
}

/// `"1,-1,1"`, `"+,-,+"` or `"+-+"`.
pub fn signs(text: &str) -> Result<Vec<i8>> {
    let tokens: Vec<&str> = if text.contains(',') {
        text.split(',').map(str::trim).collect()
    } else {
        text.trim().split("").filter(|s| !s.is_empty()).collect()
    };
    tokens
        .into_iter()
        .map(|t| match t {
            "+" | "1" | "+1" => Ok(1),
            "-" | "-1" => Ok(-1),
            _ => Err(bad("quadrant signs", text)),
        })
        .collect()
}

/// `"0:0.325,0.5:0.825"`; a bare number is a point interval.
pub fn intervals(text: &str) -> Result<Vec<[f64; 2]>> {
    text.split(',')
        .map(|part| {
            let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("intervals", text));
            match part.split_once(':') {
                Some((a, b)) => Ok([num(a)?, num(b)?]),
                None => {
                    let x = num(part)?;
                    Ok([x, x])
                }
            }
        })
        .collect()
}

pub fn numbers(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad("numbers", text)))
        .collect()
}

/// `"0,1;2"`: two groups of 0-based column indices.
pub fn groups(text: &str) -> Result<[Vec<usize>; 2]> {
    let (a, b) = text.split_once(';').ok_or_else(|| bad("column groups", text))?;
    let list = |s: &str| {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad("column groups", text)))
            .collect::<Result<Vec<_>>>()
    };
    Ok([list(a)?, list(b)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_forms() {
        assert_eq!(signs("1,-1,1").unwrap(), vec![1, -1, 1]);
        assert_eq!(signs("+-+").unwrap(), vec![1, -1, 1]);
        assert_eq!(signs("+, -").unwrap(), vec![1, -1]);
        assert!(signs("1,0").is_err());
    }

    #[test]
    fn interval_forms() {
        assert_eq!(intervals("0,1").unwrap(), vec![[0.0, 0.0], [1.0, 1.0]]);
        assert_eq!(intervals("0:0.325, 0.5:0.825").unwrap(), vec![[0.0, 0.325], [0.5, 0.825]]);
        assert!(intervals("0:x").is_err());
    }

    #[test]
    fn group_forms() {
        assert_eq!(groups("0,1;2").unwrap(), [vec![0, 1], vec![2]]);
        assert!(groups("0,1").is_err());
        assert_eq!(numbers("0.5, 0.5").unwrap(), vec![0.5, 0.5]);
    }
}
