//! The concrete rings the splitting constructions run on: generic and
//! symmetric matrices of variables, their minors and determinantal ideals,
//! generators of orthogonal and special-linear invariant rings, the identities
//! those generators satisfy, and the dimension bookkeeping for the
//! large-open-subset arguments.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::field::GroundField;
use crate::groebner::{GbConfig, GbError, Ideal, PresentedRing};
use crate::order::MonomialOrder;
use crate::poly::{PolyError, Polynomial, VarSet};

#[derive(Debug, Error, Clone)]
pub enum InvariantsError {
    #[error("characteristic 2 is not supported for orthogonal families")]
    CharTwo,
    #[error("minor size {t} out of range for a {rows}x{cols} matrix")]
    MinorSize { t: usize, rows: usize, cols: usize },
    #[error("family parameters out of range: {0}")]
    Params(String),
    #[error("relation check failed for charts {i} and {j}; this indicates an implementation bug")]
    RelationCheck { i: usize, j: usize },
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Generic,
    Symmetric,
}

/// A matrix whose entries are variables of a shared variable set. Symmetric
/// matrices use one variable for the (i, j) and (j, i) entries.
#[derive(Debug, Clone)]
pub struct MatrixOfVariables {
    rows: usize,
    cols: usize,
    kind: MatrixKind,
    vars: VarSet,
    /// Entry (i, j) as an index into `vars`.
    entries: Vec<Vec<usize>>,
}

impl MatrixOfVariables {
    /// A generic rows x cols matrix with entries `{prefix}{i}{j}`, 1-based.
    pub fn generic(prefix: &str, rows: usize, cols: usize) -> Result<Self, PolyError> {
        let mut names = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                names.push(format!("{prefix}{i}{j}"));
            }
        }
        let vars = VarSet::new(names)?;
        let entries = (0..rows)
            .map(|i| (0..cols).map(|j| i * cols + j).collect())
            .collect();
        Ok(MatrixOfVariables {
            rows,
            cols,
            kind: MatrixKind::Generic,
            vars,
            entries,
        })
    }

    /// A symmetric n x n matrix with upper-triangle variables `{prefix}{i}{j}`
    /// for i <= j.
    pub fn symmetric(prefix: &str, n: usize) -> Result<Self, PolyError> {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        for i in 1..=n {
            for j in i..=n {
                index.insert((i, j), names.len());
                names.push(format!("{prefix}{i}{j}"));
            }
        }
        let vars = VarSet::new(names)?;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (a, b) = if i <= j { (i + 1, j + 1) } else { (j + 1, i + 1) };
                        index[&(a, b)]
                    })
                    .collect()
            })
            .collect();
        Ok(MatrixOfVariables {
            rows: n,
            cols: n,
            kind: MatrixKind::Symmetric,
            vars,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn entry(&self, field: GroundField, i: usize, j: usize) -> Polynomial {
        Polynomial::var(field, &self.vars, self.entries[i][j])
    }
}

/// Laplace expansion of submatrix determinants along the first listed row,
/// with every sub-determinant memoized across calls.
pub struct MinorCache<'a> {
    matrix: &'a [Vec<Polynomial>],
    field: GroundField,
    vars: VarSet,
    cache: HashMap<(Vec<usize>, Vec<usize>), Polynomial>,
}

impl<'a> MinorCache<'a> {
    pub fn new(matrix: &'a [Vec<Polynomial>]) -> Self {
        assert!(!matrix.is_empty() && !matrix[0].is_empty());
        let field = matrix[0][0].field();
        let vars = matrix[0][0].vars().clone();
        MinorCache {
            matrix,
            field,
            vars,
            cache: HashMap::new(),
        }
    }

    pub fn minor(&mut self, rows: &[usize], cols: &[usize]) -> Polynomial {
        assert_eq!(rows.len(), cols.len());
        if rows.is_empty() {
            return Polynomial::one(self.field, &self.vars);
        }
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let result = if rows.len() == 1 {
            self.matrix[rows[0]][cols[0]].clone()
        } else {
            let mut acc = Polynomial::zero(self.field, &self.vars);
            let rest: Vec<usize> = rows[1..].to_vec();
            for (k, &c) in cols.iter().enumerate() {
                let sub_cols: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter_map(|(l, &cc)| (l != k).then_some(cc))
                    .collect();
                let sub = self.minor(&rest, &sub_cols);
                let term = self.matrix[rows[0]][c].try_mul(&sub).expect("same ring");
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        };
        self.cache.insert(key, result.clone());
        result
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All n-element subsets of {0, ..., m-1}, in lexicographic order.
pub fn index_subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n > m {
        return Vec::new();
    }
    subsets(m, n)
}

/// All t x t minors of the variable matrix, ordered by (rows, cols) subset.
pub fn minors(
    field: GroundField,
    matrix: &MatrixOfVariables,
    t: usize,
) -> Result<Vec<Polynomial>, InvariantsError> {
    if t == 0 || t > matrix.rows.min(matrix.cols) {
        return Err(InvariantsError::MinorSize {
            t,
            rows: matrix.rows,
            cols: matrix.cols,
        });
    }
    let entries: Vec<Vec<Polynomial>> = (0..matrix.rows)
        .map(|i| (0..matrix.cols).map(|j| matrix.entry(field, i, j)).collect())
        .collect();
    let mut cache = MinorCache::new(&entries);
    let mut out = Vec::new();
    for rows in subsets(matrix.rows, t) {
        for cols in subsets(matrix.cols, t) {
            out.push(cache.minor(&rows, &cols));
        }
    }
    Ok(out)
}

/// The determinantal ideal generated by all t x t minors; the zero ideal when
/// t exceeds the matrix size.
pub fn determinantal_ideal(
    field: GroundField,
    matrix: &MatrixOfVariables,
    t: usize,
    order: MonomialOrder,
) -> Result<Ideal, InvariantsError> {
    if t == 0 {
        return Err(InvariantsError::MinorSize {
            t,
            rows: matrix.rows,
            cols: matrix.cols,
        });
    }
    if t > matrix.rows.min(matrix.cols) {
        return Ok(Ideal::zero(field, &matrix.vars, order));
    }
    let gens = minors(field, matrix, t)?;
    Ok(Ideal::new(field, &matrix.vars, gens, order)?)
}

/// Generators for the orthogonal family on n-dimensional vectors with m
/// copies: Gram entries (the bilinear form is fixed as the identity, so
/// Gram = X X^T) and the maximal minors of the coordinate matrix.
#[derive(Debug, Clone)]
pub struct SoGenerators {
    pub n: usize,
    pub m: usize,
    /// m x n matrix of coordinates.
    pub x: MatrixOfVariables,
    /// Upper-triangle Gram entries, keyed by 0-based (i, j) with i <= j.
    pub gram: Vec<((usize, usize), Polynomial)>,
    /// Row subsets in I(n, m) with the corresponding maximal minors of X.
    pub u: Vec<(Vec<usize>, Polynomial)>,
}

pub fn so_generators(
    field: GroundField,
    n: usize,
    m: usize,
) -> Result<SoGenerators, InvariantsError> {
    if field.p() == 2 {
        return Err(InvariantsError::CharTwo);
    }
    if n == 0 || m == 0 {
        return Err(InvariantsError::Params(format!("n={n}, m={m}")));
    }
    let x = MatrixOfVariables::generic("x", m, n)?;
    let entries: Vec<Vec<Polynomial>> = (0..m)
        .map(|i| (0..n).map(|j| x.entry(field, i, j)).collect())
        .collect();

    let mut gram = Vec::new();
    for i in 0..m {
        for j in i..m {
            let mut dot = Polynomial::zero(field, x.vars());
            for c in 0..n {
                dot = &dot + &(&entries[i][c] * &entries[j][c]);
            }
            gram.push(((i, j), dot));
        }
    }

    let mut cache = MinorCache::new(&entries);
    let all_cols: Vec<usize> = (0..n).collect();
    let u = index_subsets(n, m)
        .into_iter()
        .map(|rows| {
            let d = cache.minor(&rows, &all_cols);
            (rows, d)
        })
        .collect();

    Ok(SoGenerators { n, m, x, gram, u })
}

/// Generators for the special-linear family on n-dimensional space with m
/// vector and q covector copies: entries of the pairing matrix X*Z, maximal
/// minors of X, and maximal minors of Z, all over one variable set.
#[derive(Debug, Clone)]
pub struct SlGenerators {
    pub n: usize,
    pub m: usize,
    pub q: usize,
    /// Combined variable set: x (m x n), then z (n x q).
    pub vars: VarSet,
    /// Pairing entries (XZ)_{a,b}.
    pub pairing: Vec<Vec<Polynomial>>,
    /// Row subsets in I(n, m) with the maximal minors of X.
    pub u: Vec<(Vec<usize>, Polynomial)>,
    /// Column subsets in I(n, q) with the maximal minors of Z.
    pub xi: Vec<(Vec<usize>, Polynomial)>,
}

pub fn sl_generators(
    field: GroundField,
    n: usize,
    m: usize,
    q: usize,
) -> Result<SlGenerators, InvariantsError> {
    if n == 0 || m == 0 || q == 0 {
        return Err(InvariantsError::Params(format!("n={n}, m={m}, q={q}")));
    }
    let mut names = Vec::new();
    for i in 1..=m {
        for c in 1..=n {
            names.push(format!("x{i}{c}"));
        }
    }
    for c in 1..=n {
        for j in 1..=q {
            names.push(format!("z{c}{j}"));
        }
    }
    let vars = VarSet::new(names)?;
    let xv = |i: usize, c: usize| Polynomial::var(field, &vars, i * n + c);
    let zv = |c: usize, j: usize| Polynomial::var(field, &vars, m * n + c * q + j);

    let x_entries: Vec<Vec<Polynomial>> =
        (0..m).map(|i| (0..n).map(|c| xv(i, c)).collect()).collect();
    let z_entries: Vec<Vec<Polynomial>> =
        (0..n).map(|c| (0..q).map(|j| zv(c, j)).collect()).collect();

    let mut pairing = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(q);
        for j in 0..q {
            let mut dot = Polynomial::zero(field, &vars);
            for c in 0..n {
                dot = &dot + &(&x_entries[i][c] * &z_entries[c][j]);
            }
            row.push(dot);
        }
        pairing.push(row);
    }

    let mut x_cache = MinorCache::new(&x_entries);
    let all_x_cols: Vec<usize> = (0..n).collect();
    let u = index_subsets(n, m)
        .into_iter()
        .map(|rows| {
            let d = x_cache.minor(&rows, &all_x_cols);
            (rows, d)
        })
        .collect();

    let mut z_cache = MinorCache::new(&z_entries);
    let all_z_rows: Vec<usize> = (0..n).collect();
    let xi = index_subsets(n, q)
        .into_iter()
        .map(|cols| {
            let d = z_cache.minor(&all_z_rows, &cols);
            (cols, d)
        })
        .collect();

    Ok(SlGenerators {
        n,
        m,
        q,
        vars,
        pairing,
        u,
        xi,
    })
}

impl SlGenerators {
    /// `det((XZ)[rows, cols])` as a polynomial in the x and z variables.
    pub fn pairing_minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        let mut cache = MinorCache::new(&self.pairing);
        cache.minor(rows, cols)
    }
}

/// Checks invariance of `g` under the unipotent generators of the
/// special-linear group: substitute `x -> x(1 + t E_{s,r})`,
/// `z -> (1 - t E_{s,r})z` for every off-diagonal pair (s, r) and compare as
/// polynomials in the formal parameter t. Elementary matrices generate the
/// group over a field, so this is exact.
pub fn verify_invariance_sl(g: &Polynomial, gens: &SlGenerators) -> Result<bool, InvariantsError> {
    let field = g.field();
    let n = gens.n;
    let m = gens.m;
    let q = gens.q;
    let big = gens.vars.extended(["t"])?;
    let t = Polynomial::var(field, &big, big.len() - 1);
    let lifted = g.extend_vars(&big)?;

    let xv = |i: usize, c: usize| Polynomial::var(field, &big, i * n + c);
    let zv = |c: usize, j: usize| Polynomial::var(field, &big, m * n + c * q + j);

    for s in 0..n {
        for r in 0..n {
            if s == r {
                continue;
            }
            let mut images: Vec<Option<Polynomial>> = Vec::with_capacity(big.len());
            for i in 0..m {
                for c in 0..n {
                    let mut img = xv(i, c);
                    if c == r {
                        img = &img + &(&t * &xv(i, s));
                    }
                    images.push(Some(img));
                }
            }
            for c in 0..n {
                for j in 0..q {
                    let mut img = zv(c, j);
                    if c == s {
                        img = &img - &(&t * &zv(r, j));
                    }
                    images.push(Some(img));
                }
            }
            images.push(Some(t.clone()));
            let moved = lifted.substitute(&images)?;
            if moved != lifted {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that every rotation-algebra derivation annihilates `g`: for each
/// antisymmetric generator A = E_{s,r} - E_{r,s}, the derivation determined
/// by `D(x_{i,c}) = sum_e x_{i,e} A_{e,c}` must send g to zero. A necessary
/// condition for orthogonal invariance in odd characteristic; full group
/// invariance is not certified here.
pub fn verify_invariance_so_lie(g: &Polynomial, gens: &SoGenerators) -> bool {
    let field = g.field();
    let n = gens.n;
    let m = gens.m;
    let vars = gens.x.vars();
    let xv = |i: usize, c: usize| Polynomial::var(field, vars, i * n + c);

    for s in 0..n {
        for r in (s + 1)..n {
            // D(x_{i,r}) = x_{i,s}, D(x_{i,s}) = -x_{i,r}, all else 0
            let mut image = Polynomial::zero(field, vars);
            for i in 0..m {
                let dr = g.partial_derivative(i * n + r);
                let ds = g.partial_derivative(i * n + s);
                image = &image + &(&dr * &xv(i, s));
                image = &image - &(&ds * &xv(i, r));
            }
            if !image.is_zero() {
                return false;
            }
        }
    }
    true
}

/// The orthogonal-family base presentation: ambient symmetric m x m matrix of
/// variables, determinantal base ideal, charts indexed by I(n, m), principal
/// minors p_I and pairings p_{I,J}. The constructor verifies the chart
/// relations `p_{I,J}^2 = p_I p_J mod I` and the symmetry `p_{I,J} = p_{J,I}`.
#[derive(Debug, Clone)]
pub struct SoPresentation {
    pub n: usize,
    pub m: usize,
    pub matrix: MatrixOfVariables,
    pub ring: Arc<PresentedRing>,
    /// Charts: the n-element row subsets, lexicographic.
    pub charts: Vec<Vec<usize>>,
    /// pairings[i][j] = det Y[charts[i], charts[j]].
    pub pairings: Vec<Vec<Polynomial>>,
}

impl SoPresentation {
    pub fn chart_element(&self, i: usize) -> &Polynomial {
        &self.pairings[i][i]
    }
}

pub fn presentation_so(
    field: GroundField,
    n: usize,
    m: usize,
    cfg: &GbConfig,
) -> Result<SoPresentation, InvariantsError> {
    if field.p() == 2 {
        return Err(InvariantsError::CharTwo);
    }
    if n == 0 || m < n {
        return Err(InvariantsError::Params(format!("n={n}, m={m}")));
    }
    let matrix = MatrixOfVariables::symmetric("y", m)?;
    let ideal = determinantal_ideal(field, &matrix, n + 1, MonomialOrder::grevlex())?;
    let ring = PresentedRing::new(ideal, cfg)?;

    let entries: Vec<Vec<Polynomial>> = (0..m)
        .map(|i| (0..m).map(|j| matrix.entry(field, i, j)).collect())
        .collect();
    let mut cache = MinorCache::new(&entries);
    let charts = index_subsets(n, m);
    let pairings: Vec<Vec<Polynomial>> = charts
        .iter()
        .map(|ci| charts.iter().map(|cj| cache.minor(ci, cj)).collect())
        .collect();

    for (i, row) in pairings.iter().enumerate() {
        for (j, pij) in row.iter().enumerate() {
            if *pij != pairings[j][i] {
                return Err(InvariantsError::RelationCheck { i, j });
            }
            let square = pij.try_pow(2)?;
            let product = pairings[i][i].try_mul(&pairings[j][j])?;
            if !ring.eq_mod(&square, &product) {
                return Err(InvariantsError::RelationCheck { i, j });
            }
        }
    }

    Ok(SoPresentation {
        n,
        m,
        matrix,
        ring,
        charts,
        pairings,
    })
}

/// The special-linear base presentation: ambient generic m x q matrix,
/// determinantal base ideal, row charts I(n, m), column charts I(n, q), and
/// the pairing minors p_{I,J}. The constructor verifies the well-definedness
/// identity `p_{I,J} p_{I',J'} = p_{I,J'} p_{I',J} mod I` over quadruples
/// (exhaustively at desk scale, seeded samples above `quad_cap`).
#[derive(Debug, Clone)]
pub struct SlPresentation {
    pub n: usize,
    pub m: usize,
    pub q: usize,
    pub matrix: MatrixOfVariables,
    pub ring: Arc<PresentedRing>,
    pub row_charts: Vec<Vec<usize>>,
    pub col_charts: Vec<Vec<usize>>,
    /// pairings[i][j] = det Y[row_charts[i], col_charts[j]].
    pub pairings: Vec<Vec<Polynomial>>,
}

pub fn presentation_sl(
    field: GroundField,
    n: usize,
    m: usize,
    q: usize,
    cfg: &GbConfig,
) -> Result<SlPresentation, InvariantsError> {
    if n == 0 || m < n || q < n {
        return Err(InvariantsError::Params(format!("n={n}, m={m}, q={q}")));
    }
    let matrix = MatrixOfVariables::generic("y", m, q)?;
    let ideal = determinantal_ideal(field, &matrix, n + 1, MonomialOrder::grevlex())?;
    let ring = PresentedRing::new(ideal, cfg)?;

    let entries: Vec<Vec<Polynomial>> = (0..m)
        .map(|i| (0..q).map(|j| matrix.entry(field, i, j)).collect())
        .collect();
    let mut cache = MinorCache::new(&entries);
    let row_charts = index_subsets(n, m);
    let col_charts = index_subsets(n, q);
    let pairings: Vec<Vec<Polynomial>> = row_charts
        .iter()
        .map(|ri| col_charts.iter().map(|cj| cache.minor(ri, cj)).collect())
        .collect();

    let quad_cap = 1_500usize;
    let rl = row_charts.len();
    let cl = col_charts.len();
    let total = rl * rl * cl * cl;
    let check = |i: usize, ip: usize, j: usize, jp: usize| -> Result<(), InvariantsError> {
        let lhs = pairings[i][j].try_mul(&pairings[ip][jp])?;
        let rhs = pairings[i][jp].try_mul(&pairings[ip][j])?;
        if !ring.eq_mod(&lhs, &rhs) {
            return Err(InvariantsError::RelationCheck { i, j });
        }
        Ok(())
    };
    if total <= quad_cap {
        for i in 0..rl {
            for ip in 0..rl {
                for j in 0..cl {
                    for jp in 0..cl {
                        check(i, ip, j, jp)?;
                    }
                }
            }
        }
    } else {
        use rand::Rng;
        let mut rng = crate::sample::rng_from_seed(0);
        for _ in 0..quad_cap {
            let i = rng.gen_range(0..rl);
            let ip = rng.gen_range(0..rl);
            let j = rng.gen_range(0..cl);
            let jp = rng.gen_range(0..cl);
            check(i, ip, j, jp)?;
        }
    }

    Ok(SlPresentation {
        n,
        m,
        q,
        matrix,
        ring,
        row_charts,
        col_charts,
        pairings,
    })
}

/// The double-cover presentation with explicit cover generators: ambient
/// variables are the symmetric y's followed by one u variable per chart, and
/// the ideal combines the determinantal base ideal with the quadratic
/// relations `u_I u_J - p_{I,J}` and the mixed relations
/// `p_I u_J - p_{I,J} u_I`. All listed relations hold identically under the
/// Gram substitution, but the list is not certified to generate the full
/// relation ideal; it is the concrete presentation the F-purity spot checks
/// run on.
pub fn so_cover_presentation(
    field: GroundField,
    n: usize,
    m: usize,
    cfg: &GbConfig,
) -> Result<Ideal, InvariantsError> {
    let pres = presentation_so(field, n, m, cfg)?;
    let chart_names: Vec<String> = pres
        .charts
        .iter()
        .map(|c| {
            let digits: String = c.iter().map(|i| (i + 1).to_string()).collect();
            format!("u{digits}")
        })
        .collect();
    let vars = pres
        .matrix
        .vars()
        .extended(chart_names.iter().map(String::as_str))?;
    let base = pres.matrix.vars().len();
    let uvar = |i: usize| Polynomial::var(field, &vars, base + i);

    let mut gens: Vec<Polynomial> = pres
        .ring
        .ideal()
        .generators()
        .iter()
        .map(|g| g.extend_vars(&vars))
        .collect::<Result<_, _>>()?;
    let k = pres.charts.len();
    for i in 0..k {
        for j in i..k {
            let pij = pres.pairings[i][j].extend_vars(&vars)?;
            gens.push(&(&uvar(i) * &uvar(j)) - &pij);
        }
    }
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let pi = pres.pairings[i][i].extend_vars(&vars)?;
            let pij = pres.pairings[i][j].extend_vars(&vars)?;
            gens.push(&(&pi * &uvar(j)) - &(&pij * &uvar(i)));
        }
    }
    Ok(Ideal::new(field, &vars, gens, MonomialOrder::grevlex())?)
}

/// Dimension of the locus of rank-at-most-t r x s matrices: t(r + s - t).
pub fn dim_determinantal(t: usize, r: usize, s: usize) -> Result<u64, InvariantsError> {
    if t == 0 || t > r.min(s) {
        return Err(InvariantsError::Params(format!("t={t}, r={r}, s={s}")));
    }
    Ok((t * (r + s - t)) as u64)
}

/// Dimension bookkeeping for the special-linear total space and the loci
/// where all row minors (resp. column minors) vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlDims {
    pub dim_x: i64,
    pub dim_z_u: i64,
    pub dim_z_xi: i64,
    pub codim_z_u: i64,
    pub codim_z_xi: i64,
}

/// `dim X = (m+n)q - (n^2-1)`; the u-side locus has dimension
/// `(n-1)(m+1) + nq - (n^2-1)` and hence codimension `m(q-n) + (m-n+1)`,
/// with the symmetric (m <-> q) swap on the xi side. Both codimensions are at
/// least 2 whenever m, q > n. The headline dim-X expression only balances
/// against the xi-side chain after the same swap.
pub fn dims_sl(n: usize, m: usize, q: usize) -> Result<SlDims, InvariantsError> {
    if n == 0 || m < n || q < n {
        return Err(InvariantsError::Params(format!("n={n}, m={m}, q={q}")));
    }
    let (n, m, q) = (n as i64, m as i64, q as i64);
    let dim_x = (m + n) * q - (n * n - 1);
    let dim_z_u = (n - 1) * (m + 1) + n * q - (n * n - 1);
    let dim_z_xi = (n - 1) * (q + 1) + n * m - (n * n - 1);
    let codim_z_u = m * (q - n) + (m - n + 1);
    let codim_z_xi = q * (m - n) + (q - n + 1);
    debug_assert_eq!(dim_x - codim_z_u, dim_z_u);
    debug_assert_eq!(((q + n) * m - (n * n - 1)) - codim_z_xi, dim_z_xi);
    if m > n && q > n {
        assert!(codim_z_u >= 2 && codim_z_xi >= 2);
    }
    Ok(SlDims {
        dim_x,
        dim_z_u,
        dim_z_xi,
        codim_z_u,
        codim_z_xi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse, print};

    fn fp(p: u32) -> GroundField {
        GroundField::new(p).unwrap()
    }

    #[test]
    fn generic_two_by_two_determinant() {
        let m = MatrixOfVariables::generic("x", 2, 2).unwrap();
        let f = fp(3);
        let ms = minors(f, &m, 2).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0], parse("x11*x22 - x12*x21", f, m.vars()).unwrap());
    }

    #[test]
    fn symmetric_two_by_two_determinant() {
        let m = MatrixOfVariables::symmetric("y", 2).unwrap();
        let f = fp(3);
        let ms = minors(f, &m, 2).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0], parse("y11*y22 - y12^2", f, m.vars()).unwrap());
    }

    #[test]
    fn two_by_three_has_three_maximal_minors() {
        let m = MatrixOfVariables::generic("x", 2, 3).unwrap();
        let ms = minors(fp(3), &m, 2).unwrap();
        assert_eq!(ms.len(), 3);
    }

    #[test]
    fn determinantal_ideal_above_size_is_zero() {
        let m = MatrixOfVariables::generic("x", 2, 2).unwrap();
        let i = determinantal_ideal(fp(3), &m, 3, MonomialOrder::grevlex()).unwrap();
        assert!(i.is_zero());
    }

    #[test]
    fn so_generators_n1_m2() {
        let f = fp(3);
        let g = so_generators(f, 1, 2).unwrap();
        let names: Vec<String> = g.gram.iter().map(|(_, p)| print(p)).collect();
        assert_eq!(names, ["x11^2", "x11*x21", "x21^2"]);
        assert_eq!(g.u.len(), 2);
        assert_eq!(print(&g.u[0].1), "x11");
        assert_eq!(print(&g.u[1].1), "x21");
    }

    #[test]
    fn so_rejects_char_two() {
        assert!(matches!(
            so_generators(fp(2), 1, 2),
            Err(InvariantsError::CharTwo)
        ));
    }

    #[test]
    fn gram_minors_factor_through_row_minors() {
        // det(Gram[I,J]) = u_I * u_J for n <= 2, m <= 4
        let f = fp(3);
        for n in 1..=2usize {
            for m in n..=4usize {
                let g = so_generators(f, n, m).unwrap();
                let mut gram_full = vec![vec![Polynomial::zero(f, g.x.vars()); m]; m];
                for ((i, j), e) in &g.gram {
                    gram_full[*i][*j] = e.clone();
                    gram_full[*j][*i] = e.clone();
                }
                let mut cache = MinorCache::new(&gram_full);
                for (ri, ui) in &g.u {
                    for (rj, uj) in &g.u {
                        assert_eq!(cache.minor(ri, rj), ui.try_mul(uj).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn cauchy_binet_for_pairing_minors() {
        // det((XZ)[I,J]) = u_I * xi_J for n <= 2, m,q <= 4
        let f = fp(3);
        for n in 1..=2usize {
            for m in n..=4usize {
                for q in n..=4usize {
                    let g = sl_generators(f, n, m, q).unwrap();
                    for (ri, ui) in &g.u {
                        for (cj, xij) in &g.xi {
                            assert_eq!(g.pairing_minor(ri, cj), ui.try_mul(xij).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sl_generators_are_unipotent_invariant() {
        let f = fp(3);
        let g = sl_generators(f, 2, 2, 2).unwrap();
        for row in &g.pairing {
            for e in row {
                assert!(verify_invariance_sl(e, &g).unwrap());
            }
        }
        for (_, u) in &g.u {
            assert!(verify_invariance_sl(u, &g).unwrap());
        }
        for (_, xi) in &g.xi {
            assert!(verify_invariance_sl(xi, &g).unwrap());
        }
        // a raw coordinate is not invariant
        let x11 = Polynomial::var(f, &g.vars, 0);
        assert!(!verify_invariance_sl(&x11, &g).unwrap());
    }

    #[test]
    fn so_generators_are_lie_invariant() {
        let f = fp(3);
        let g = so_generators(f, 2, 2).unwrap();
        for (_, e) in &g.gram {
            assert!(verify_invariance_so_lie(e, &g));
        }
        for (_, u) in &g.u {
            assert!(verify_invariance_so_lie(u, &g));
        }
        let x11 = Polynomial::var(f, g.x.vars(), 0);
        assert!(!verify_invariance_so_lie(&x11, &g));
    }

    #[test]
    fn so_presentation_smallest_case() {
        let f = fp(3);
        let pres = presentation_so(f, 1, 2, &GbConfig::default()).unwrap();
        assert_eq!(pres.charts, vec![vec![0], vec![1]]);
        assert_eq!(print(pres.chart_element(0)), "y11");
        assert_eq!(print(pres.chart_element(1)), "y22");
        assert_eq!(print(&pres.pairings[0][1]), "y12");
        // the defining relation itself
        let rel = parse("y12^2 - y11*y22", f, pres.matrix.vars()).unwrap();
        assert!(pres.ring.contains(&rel));
    }

    #[test]
    fn so_presentation_relations_mod_det3() {
        let f = fp(3);
        let pres = presentation_so(f, 2, 3, &GbConfig::default()).unwrap();
        assert_eq!(pres.charts.len(), 3);
        // base ideal is the principal symmetric determinant
        assert_eq!(pres.ring.ideal().generators().len(), 1);
        assert_eq!(pres.ring.ideal().generators()[0].total_degree(), 3);
    }

    #[test]
    fn sl_presentation_well_definedness() {
        let f = fp(3);
        let pres = presentation_sl(f, 2, 3, 3, &GbConfig::default()).unwrap();
        assert_eq!(pres.row_charts.len(), 3);
        assert_eq!(pres.col_charts.len(), 3);
    }

    #[test]
    fn gram_substitution_kills_base_ideal() {
        // Substituting the Gram entries for the symmetric variables
        // annihilates every generator of the determinantal base ideal and
        // sends p_{I,J} to u_I * u_J: an independent route to the chart
        // relations that bypasses normal forms entirely.
        let f = fp(3);
        let pres = presentation_so(f, 2, 3, &GbConfig::default()).unwrap();
        let gens = so_generators(f, 2, 3).unwrap();
        let gram_map: HashMap<String, Polynomial> = gens
            .gram
            .iter()
            .map(|((i, j), e)| (format!("y{}{}", i + 1, j + 1), e.clone()))
            .collect();
        let subst =
            |g: &Polynomial| g.substitute_map(&|name| gram_map.get(name).cloned()).unwrap();
        for gen in pres.ring.ideal().generators() {
            assert!(subst(gen).is_zero());
        }
        for (i, (_, ui)) in gens.u.iter().enumerate() {
            for (j, (_, uj)) in gens.u.iter().enumerate() {
                assert_eq!(subst(&pres.pairings[i][j]), ui.try_mul(uj).unwrap());
            }
        }
    }

    #[test]
    fn dimension_formulas() {
        assert_eq!(dim_determinantal(1, 2, 2).unwrap(), 3);
        assert_eq!(dim_determinantal(1, 2, 3).unwrap(), 4);
        assert_eq!(dim_determinantal(2, 3, 3).unwrap(), 8);

        let d = dims_sl(2, 3, 3).unwrap();
        assert_eq!(d.dim_x, 12);
        assert_eq!(d.codim_z_u, 5);
        assert_eq!(d.codim_z_xi, 5);

        // q = n specializes the u-side codimension to m - n + 1
        let d2 = dims_sl(2, 4, 2).unwrap();
        assert_eq!(d2.codim_z_u, 4 - 2 + 1);
    }

    #[test]
    fn krull_dim_matches_formulas() {
        let f = fp(3);
        let cfg = GbConfig::default();
        for (t, r, s) in [(1usize, 2usize, 2usize), (1, 2, 3)] {
            let m = MatrixOfVariables::generic("x", r, s).unwrap();
            let ideal = determinantal_ideal(f, &m, t + 1, MonomialOrder::grevlex()).unwrap();
            let dim = crate::groebner::krull_dim(&ideal, &cfg).unwrap();
            assert_eq!(dim as u64, dim_determinantal(t, r, s).unwrap());
        }
        // symmetric 3x3 rank-2 locus is the determinant hypersurface: 6 - 1
        let m = MatrixOfVariables::symmetric("y", 3).unwrap();
        let ideal = determinantal_ideal(f, &m, 3, MonomialOrder::grevlex()).unwrap();
        assert_eq!(crate::groebner::krull_dim(&ideal, &cfg).unwrap(), 5);
    }
}
