//! Krull dimension of A/I through the leading-term ideal: the dimension
//! equals the size of the largest variable subset meeting the support of no
//! leading monomial. The search is exact.

use super::buchberger::buchberger;
use super::{GbConfig, GbError, Ideal};

const MAX_DIM_VARS: usize = 24;

/// Dimension of the vanishing locus of `ideal`; the zero ideal in n variables
/// has dimension n, the unit ideal -1.
pub fn krull_dim(ideal: &Ideal, cfg: &GbConfig) -> Result<i64, GbError> {
    let n = ideal.vars().len();
    if n > MAX_DIM_VARS {
        return Err(GbError::TooManyVariables {
            max: MAX_DIM_VARS,
            got: n,
        });
    }
    let gb = buchberger(ideal, cfg)?;

    // Support bitmasks of the leading monomials, kept minimal under
    // inclusion. An empty support means 1 is in the ideal.
    let mut supports: Vec<u32> = Vec::new();
    for lm in gb.leading_monomials() {
        let mask = lm.support().fold(0u32, |acc, i| acc | (1 << i));
        if mask == 0 {
            return Ok(-1);
        }
        if supports.iter().any(|&s| s & mask == s) {
            continue;
        }
        supports.retain(|&s| mask & s != mask);
        supports.push(mask);
    }

    let mut best = 0usize;
    // DFS over variables; prune when even taking all remaining variables
    // cannot beat the best known independent set.
    fn dfs(
        var: usize,
        n: usize,
        chosen: u32,
        count: usize,
        supports: &[u32],
        best: &mut usize,
    ) {
        if count + (n - var) <= *best {
            return;
        }
        if var == n {
            *best = (*best).max(count);
            return;
        }
        // Take `var` if no support fits inside the enlarged set.
        let with = chosen | (1 << var);
        if !supports.iter().any(|&s| s & with == s) {
            dfs(var + 1, n, with, count + 1, supports, best);
        }
        dfs(var + 1, n, chosen, count, supports, best);
    }
    dfs(0, n, 0, 0, &supports, &mut best);
    Ok(best as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GroundField;
    use crate::order::MonomialOrder;
    use crate::poly::VarSet;
    use crate::text::parse;

    fn setup(p: u32, names: &[&str], gens: &[&str]) -> Ideal {
        let field = GroundField::new(p).unwrap();
        let vars = VarSet::new(names.to_vec()).unwrap();
        let gens = gens
            .iter()
            .map(|s| parse(s, field, &vars).unwrap())
            .collect();
        Ideal::new(field, &vars, gens, MonomialOrder::grevlex()).unwrap()
    }

    #[test]
    fn zero_ideal_is_full_dimensional() {
        let field = GroundField::new(3).unwrap();
        let vars = VarSet::new(["x", "y", "z"]).unwrap();
        let ideal = Ideal::zero(field, &vars, MonomialOrder::grevlex());
        assert_eq!(krull_dim(&ideal, &GbConfig::default()).unwrap(), 3);
    }

    #[test]
    fn hypersurface_in_four_variables() {
        let ideal = setup(3, &["a", "b", "c", "d"], &["a*d - b*c"]);
        assert_eq!(krull_dim(&ideal, &GbConfig::default()).unwrap(), 3);
    }

    #[test]
    fn rank_one_locus_of_two_by_three() {
        let ideal = setup(
            3,
            &["x11", "x12", "x13", "x21", "x22", "x23"],
            &[
                "x11*x22 - x12*x21",
                "x11*x23 - x13*x21",
                "x12*x23 - x13*x22",
            ],
        );
        assert_eq!(krull_dim(&ideal, &GbConfig::default()).unwrap(), 4);
    }

    #[test]
    fn unit_ideal_is_empty() {
        let ideal = setup(3, &["x"], &["1"]);
        assert_eq!(krull_dim(&ideal, &GbConfig::default()).unwrap(), -1);
    }

    #[test]
    fn maximal_ideal_is_zero_dimensional() {
        let ideal = setup(3, &["x", "y"], &["x", "y"]);
        assert_eq!(krull_dim(&ideal, &GbConfig::default()).unwrap(), 0);
    }
}
