//! Small argument parsers: the polynomial mini-syntax, direction lists
//! and the averaged-box-spec file format.

use polyprime::grid::AvgBoxSpec;
use polyprime::polysys::json::{polymap_from_dto, PolyMapDto, ScalarPolyDto};
use serde::Deserialize;

use crate::CliError;

/// Parses one polynomial in `y` with integer coefficients into an
/// ascending coefficient list. Terms are monomials joined by `+`/`-`:
/// `"2*y^2-y+1"`, `"y^3"`, `"0"`. No parentheses, no products of
/// variables.
pub fn parse_poly1(text: &str) -> Result<Vec<i64>, CliError> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(CliError::input("empty polynomial"));
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut term = String::new();
    let mut chars = cleaned.chars().peekable();
    let mut terms: Vec<String> = Vec::new();
    if let Some(&c) = chars.peek() {
        if c == '-' || c == '+' {
            term.push(c);
            chars.next();
        }
    }
    for c in chars {
        if c == '+' || c == '-' {
            terms.push(std::mem::take(&mut term));
            term.push(c);
        } else {
            term.push(c);
        }
    }
    terms.push(term);
    for t in terms {
        let t = t.trim_start_matches('+');
        let (coeff, power) = parse_term(t)?;
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] += coeff;
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    Ok(coeffs)
}

fn parse_term(t: &str) -> Result<(i64, usize), CliError> {
    let bad = || CliError::input(format!("cannot parse term '{}'", t));
    if t.is_empty() {
        return Err(bad());
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1, t),
    };
    if body.is_empty() {
        return Err(bad());
    }
    if let Some(pos) = body.find('y') {
        let coeff_part = &body[..pos];
        let coeff = if coeff_part.is_empty() {
            1
        } else {
            coeff_part
                .trim_end_matches('*')
                .parse::<i64>()
                .map_err(|_| bad())?
        };
        let rest = &body[pos + 1..];
        let power = if rest.is_empty() {
            1
        } else {
            rest.strip_prefix('^')
                .ok_or_else(bad)?
                .parse::<usize>()
                .map_err(|_| bad())?
        };
        Ok((sign * coeff, power))
    } else {
        Ok((sign * body.parse::<i64>().map_err(|_| bad())?, 0))
    }
}

/// Semicolon-separated polynomial list: `"0;y;2*y^2"`.
pub fn parse_poly_list(text: &str) -> Result<Vec<Vec<i64>>, CliError> {
    text.split(';').map(parse_poly1).collect()
}

/// Semicolon-separated integer vectors: `"1,1;1,2"`.
pub fn parse_dirs(text: &str) -> Result<Vec<Vec<i64>>, CliError> {
    text.split(';')
        .map(|v| {
            v.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|e| CliError::input(format!("bad direction entry '{}': {}", c, e)))
                })
                .collect()
        })
        .collect()
}

/// Comma-separated integers: `"0,1,-3"`.
pub fn parse_i64_list(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|e| CliError::input(format!("bad integer '{}': {}", c, e)))
        })
        .collect()
}

pub fn parse_u64_list(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|c| {
            c.trim()
                .parse::<u64>()
                .map_err(|e| CliError::input(format!("bad integer '{}': {}", c, e)))
        })
        .collect()
}

/// On-disk averaged-box spec: shared parameter names, one coordinate
/// polynomial list per direction map, the parameter range and side
/// length.
#[derive(Debug, Deserialize)]
pub struct AvgSpecFile {
    pub parameters: Vec<String>,
    pub maps: Vec<Vec<ScalarPolyDto>>,
    #[serde(rename = "H")]
    pub h_range: u64,
    #[serde(rename = "M")]
    pub side_m: usize,
}

pub fn load_avg_spec(path: &std::path::Path) -> Result<AvgBoxSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {}", path.display(), e)))?;
    let file: AvgSpecFile = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: {}", path.display(), e)))?;
    let maps = file
        .maps
        .iter()
        .map(|coords| {
            polymap_from_dto(&PolyMapDto {
                parameters: file.parameters.clone(),
                coords: coords.clone(),
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::input(e.to_string()))?;
    AvgBoxSpec::new(maps, file.h_range, file.side_m).map_err(|e| CliError::input(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_mini_syntax() {
        assert_eq!(parse_poly1("0").unwrap(), vec![0]);
        assert_eq!(parse_poly1("y").unwrap(), vec![0, 1]);
        assert_eq!(parse_poly1("2*y^2").unwrap(), vec![0, 0, 2]);
        assert_eq!(parse_poly1("2*y^2-y+1").unwrap(), vec![1, -1, 2]);
        assert_eq!(parse_poly1("-y^3").unwrap(), vec![0, 0, 0, -1]);
        assert_eq!(parse_poly1("y + y").unwrap(), vec![0, 2]);
        assert!(parse_poly1("y*y").is_err());
        assert!(parse_poly1("").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(
            parse_poly_list("0;y;2*y^2").unwrap(),
            vec![vec![0], vec![0, 1], vec![0, 0, 2]]
        );
        assert_eq!(
            parse_dirs("1,1;1,2").unwrap(),
            vec![vec![1, 1], vec![1, 2]]
        );
        assert_eq!(parse_i64_list("0, 1,-3").unwrap(), vec![0, 1, -3]);
    }
}
