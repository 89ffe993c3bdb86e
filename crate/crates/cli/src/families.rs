//! Builtin ideal families, so checks need no external input files.
//!
//! Family specs:
//! - `node`                the coordinate-axes curve x*y
//! - `cusp`                y^2 - x^3
//! - `det R S`             maximal minors of a generic R x S matrix
//! - `sym-det N`           the determinant of a symmetric N x N matrix
//! - `so-cover N M`        the double-cover presentation with explicit
//!                         cover generators (y and u variables)

use frobsplit::field::GroundField;
use frobsplit::groebner::{GbConfig, Ideal};
use frobsplit::invariants::{determinantal_ideal, so_cover_presentation, MatrixOfVariables};
use frobsplit::order::MonomialOrder;
use frobsplit::poly::{Polynomial, VarSet};
use frobsplit::text;

#[derive(Debug, Clone)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn builtin_ideal(spec: &str, field: GroundField, cfg: &GbConfig) -> Result<Ideal, UsageError> {
    let parts: Vec<&str> = spec.split_whitespace().collect();
    let usize_arg = |s: &str| -> Result<usize, UsageError> {
        s.parse::<usize>()
            .map_err(|_| UsageError(format!("bad family parameter `{s}`")))
    };
    match parts.as_slice() {
        ["node"] => {
            let vars = VarSet::new(["x", "y"]).expect("static names");
            let f = text::parse("x*y", field, &vars).expect("static polynomial");
            Ok(Ideal::new(field, &vars, vec![f], MonomialOrder::grevlex()).expect("ideal"))
        }
        ["cusp"] => {
            let vars = VarSet::new(["x", "y"]).expect("static names");
            let f = text::parse("y^2 - x^3", field, &vars).expect("static polynomial");
            Ok(Ideal::new(field, &vars, vec![f], MonomialOrder::grevlex()).expect("ideal"))
        }
        ["det", r, s] => {
            let (r, s) = (usize_arg(r)?, usize_arg(s)?);
            if r == 0 || s == 0 || r > 4 || s > 4 {
                return Err(UsageError(format!("det family out of range: {r} x {s}")));
            }
            let m =
                MatrixOfVariables::generic("y", r, s).map_err(|e| UsageError(e.to_string()))?;
            let names = if r == 2 && s == 2 {
                // the classic a, b, c, d coordinates
                Some(VarSet::new(["a", "b", "c", "d"]).expect("static names"))
            } else {
                None
            };
            let ideal = determinantal_ideal(field, &m, r.min(s), MonomialOrder::grevlex())
                .map_err(|e| UsageError(e.to_string()))?;
            match names {
                None => Ok(ideal),
                Some(vars) => {
                    // rename y11..y22 -> a..d for the 2x2 case
                    let gens: Vec<Polynomial> = ideal
                        .generators()
                        .iter()
                        .map(|g| {
                            Polynomial::from_terms(
                                field,
                                &vars,
                                g.terms().map(|(mono, c)| (mono.clone(), i64::from(c))),
                            )
                        })
                        .collect();
                    Ok(Ideal::new(field, &vars, gens, MonomialOrder::grevlex()).expect("ideal"))
                }
            }
        }
        ["sym-det", n] => {
            let n = usize_arg(n)?;
            if n == 0 || n > 4 {
                return Err(UsageError(format!("sym-det family out of range: {n}")));
            }
            let m = MatrixOfVariables::symmetric("y", n).map_err(|e| UsageError(e.to_string()))?;
            determinantal_ideal(field, &m, n, MonomialOrder::grevlex())
                .map_err(|e| UsageError(e.to_string()))
        }
        ["so-cover", n, m] => {
            let (n, m) = (usize_arg(n)?, usize_arg(m)?);
            if n == 0 || m < n || m > 4 {
                return Err(UsageError(format!("so-cover family out of range: {n}, {m}")));
            }
            so_cover_presentation(field, n, m, cfg).map_err(|e| UsageError(e.to_string()))
        }
        _ => Err(UsageError(format!(
            "unknown family `{spec}`; known: node, cusp, det R S, sym-det N, so-cover N M"
        ))),
    }
}

/// Parses a raw `--ideal` argument: semicolon-separated polynomials with an
/// optional comma-separated variable list (inferred by first appearance when
/// omitted).
pub fn raw_ideal(
    polys: &str,
    vars: Option<&str>,
    field: GroundField,
) -> Result<Ideal, UsageError> {
    let texts: Vec<&str> = polys
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if texts.is_empty() {
        return Err(UsageError("empty ideal specification".to_string()));
    }
    let varset = match vars {
        Some(list) => {
            let names: Vec<&str> = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            VarSet::new(names).map_err(|e| UsageError(e.to_string()))?
        }
        None => {
            let joined = texts.join(" + ");
            let (_, inferred) = text::parse_infer(&joined, field)
                .map_err(|e| UsageError(format!("cannot infer variables: {e}")))?;
            inferred
        }
    };
    let gens: Vec<Polynomial> = texts
        .iter()
        .map(|t| text::parse(t, field, &varset).map_err(|e| UsageError(e.to_string())))
        .collect::<Result<_, _>>()?;
    Ideal::new(field, &varset, gens, MonomialOrder::grevlex())
        .map_err(|e| UsageError(e.to_string()))
}
