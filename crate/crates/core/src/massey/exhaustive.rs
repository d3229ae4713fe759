//! Literal value sets of Massey products over a prime field, by enumerating
//! every defining system.
//!
//! Entries `x_{i,i+1}` range over `rep + B`, longer entries over a particular
//! primitive plus all cocycles of their degree. The two longest entries
//! `x_{1n}` and `x_{2,n+1}` enter `c(X)` affinely and nowhere else, so for each
//! choice of the shorter entries their contribution is a coset, added in
//! closed form.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use super::defining::{entry_degree, DefiningSystem};
use super::verdict::Essentiality;
use crate::dga::{CohomologyClass, DgaModel};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The enumeration budget: `MASSEY_BUDGET` when set to an integer, else
/// [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("MASSEY_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// The set `{[c(X)]}` over all defining systems `X`.
#[derive(Clone, Debug)]
pub struct MasseyValueSet {
    degree: u32,
    values: Vec<CohomologyClass>,
    coordinates: BTreeSet<Vec<u32>>,
    estimate: u128,
    witness: Option<DefiningSystem>,
}

impl MasseyValueSet {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Values in increasing order of their cohomology coordinates.
    pub fn values(&self) -> &[CohomologyClass] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, c: &CohomologyClass) -> bool {
        self.values.contains(c)
    }

    pub fn contains_zero(&self) -> bool {
        self.coordinates.iter().any(|v| v.iter().all(|&x| x == 0))
    }

    /// Number of enumerated partial systems (before the closed-form final layer).
    pub fn estimate(&self) -> u128 {
        self.estimate
    }

    /// One defining system realizing a value, when the set is nonempty.
    pub fn witness(&self) -> Option<&DefiningSystem> {
        self.witness.as_ref()
    }

    /// Essential means nonempty and not containing zero.
    pub fn essentiality(&self) -> Essentiality {
        if !self.is_empty() && !self.contains_zero() {
            Essentiality::Essential
        } else {
            Essentiality::Inessential
        }
    }
}

type Vector = Vec<u32>;

/// Products of basis elements in one pair of degrees, with the sign of `bar`
/// on the left factor folded in.
struct Table {
    right_dim: usize,
    /// `cells[a * right_dim + b]` lists the terms of `bar(e_a) * e_b`.
    cells: Vec<Vec<(u32, u32)>>,
}

/// One `bar(x_left) * x_right` summand; `table` is `None` above the top degree.
#[derive(Clone, Copy)]
struct Term {
    left: usize,
    right: usize,
    table: Option<usize>,
}

struct Level {
    dim: usize,
    /// Solves `d x = c` for `c` in this degree.
    solve_pivots: Vec<usize>,
    solve_transform: Vec<Vector>,
    solve_cols: usize,
    cocycles: Vec<Vector>,
    coboundaries: Vec<(usize, Vector)>,
    cohomology: Vec<(usize, Vector)>,
}

struct Plan {
    p: u64,
    n: usize,
    /// All entries, shortest first, except that `(1,n)` and `(2,n+1)` come last.
    pairs: Vec<(usize, usize)>,
    degrees: Vec<u32>,
    reps: Vec<Vector>,
    levels: Vec<Level>,
    tables: Vec<Table>,
    /// Summands of the required `d x` for each entry.
    terms: Vec<Vec<Term>>,
    /// Summands of `c(X)`.
    output_terms: Vec<Term>,
    out_degree: u32,
}

fn residue(s: &Scalar) -> u32 {
    s.residue().expect("prime field scalar")
}

fn dense(row: &[Scalar]) -> Vector {
    row.iter().map(residue).collect()
}

impl Plan {
    fn build(model: &DgaModel, classes: &[CohomologyClass], p: u32) -> Result<Plan> {
        let n = classes.len();
        let top = model.truncation();
        let class_degrees: Vec<u32> = classes.iter().map(|c| c.degree()).collect();
        let mut pairs = DefiningSystem::index_pairs(n);
        pairs.retain(|&(i, j)| j - i < n - 1);
        pairs.push((1, n));
        pairs.push((2, n + 1));
        let index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(k, &ij)| (ij, k)).collect();
        let degrees = pairs
            .iter()
            .map(|&(i, j)| entry_degree(&class_degrees, i, j))
            .collect::<Result<Vec<_>>>()?;
        let out_degree = entry_degree(&class_degrees, 1, n + 1)? + 1;
        let mut levels = Vec::new();
        for deg in 0..=top + 1 {
            levels.push(Self::level(model, deg)?);
        }
        let reps = classes
            .iter()
            .map(|c| Ok(dense(&model.to_dense(c.representative())?)))
            .collect::<Result<Vec<_>>>()?;

        let mut table_ids: HashMap<(u32, u32), usize> = HashMap::new();
        let mut tables = Vec::new();
        let mut term = |i: usize, r: usize, j: usize| -> Result<Term> {
            let (left, right) = (index[&(i, r)], index[&(r, j)]);
            let key = (degrees[left], degrees[right]);
            let table = if key.0 + key.1 > top {
                None
            } else if let Some(&t) = table_ids.get(&key) {
                Some(t)
            } else {
                tables.push(Self::table(model, key.0, key.1)?);
                table_ids.insert(key, tables.len() - 1);
                Some(tables.len() - 1)
            };
            Ok(Term { left, right, table })
        };
        let mut terms = Vec::with_capacity(pairs.len());
        for &(i, j) in &pairs {
            terms.push((i + 1..j).map(|r| term(i, r, j)).collect::<Result<Vec<_>>>()?);
        }
        let output_terms = (2..=n).map(|r| term(1, r, n + 1)).collect::<Result<Vec<_>>>()?;
        Ok(Plan {
            p: p as u64,
            n,
            pairs,
            degrees,
            reps,
            levels,
            tables,
            terms,
            output_terms,
            out_degree,
        })
    }

    fn level(model: &DgaModel, deg: u32) -> Result<Level> {
        if deg > model.truncation() {
            return Ok(Level {
                dim: 0,
                solve_pivots: Vec::new(),
                solve_transform: Vec::new(),
                solve_cols: model.dimension(deg - 1).unwrap_or(0),
                cocycles: Vec::new(),
                coboundaries: Vec::new(),
                cohomology: Vec::new(),
            });
        }
        let slice = model.slice(deg)?;
        let echelon = |e: &crate::linalg::Echelon| -> Vec<(usize, Vector)> {
            e.pivots().iter().copied().zip(e.rows().iter().map(|r| dense(r))).collect()
        };
        Ok(Level {
            dim: model.dimension(deg)?,
            solve_pivots: slice.solver.pivots().to_vec(),
            solve_transform: slice.solver.transform().iter().map(|r| dense(r)).collect(),
            solve_cols: slice.solver.cols(),
            cocycles: slice.cocycles.iter().map(|r| dense(r)).collect(),
            coboundaries: echelon(&slice.coboundaries),
            cohomology: echelon(&slice.cohomology),
        })
    }

    fn table(model: &DgaModel, d1: u32, d2: u32) -> Result<Table> {
        let pres = model.presentation();
        let field = pres.field();
        let b1 = pres.basis_of_degree(d1)?;
        let b2 = pres.basis_of_degree(d2)?;
        let sign = if d1 % 2 == 1 { field.from_i64(-1) } else { field.one() };
        let mut cells = Vec::with_capacity(b1.len() * b2.len());
        for m1 in &b1 {
            let v1 = pres.monomial_vector(m1.clone(), sign.clone());
            for m2 in &b2 {
                let v2 = pres.monomial_vector(m2.clone(), field.one());
                let prod = model.to_dense(&pres.multiply(&v1, &v2)?)?;
                cells.push(
                    prod.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k as u32, residue(c)))
                        .collect(),
                );
            }
        }
        Ok(Table {
            right_dim: b2.len(),
            cells,
        })
    }

    fn dim(&self, deg: u32) -> usize {
        self.levels.get(deg as usize).map_or(0, |l| l.dim)
    }

    fn entry(&self, i: usize, j: usize) -> usize {
        self.pairs.iter().position(|&ij| ij == (i, j)).expect("entry of the plan")
    }

    /// `acc += bar(x) * y`.
    fn accumulate(&self, acc: &mut [u64], x: &[u32], y: &[u32], table: usize) {
        let table = &self.tables[table];
        let p = self.p;
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            let row = &table.cells[a * table.right_dim..(a + 1) * table.right_dim];
            for (cell, &yb) in row.iter().zip(y) {
                if yb == 0 {
                    continue;
                }
                let s = xa as u64 * yb as u64 % p;
                for &(k, c) in cell {
                    acc[k as usize] = (acc[k as usize] + s * c as u64) % p;
                }
            }
        }
    }

    fn sum_terms(&self, state: &[Vector], terms: &[Term], dim: usize) -> Vector {
        let mut acc = vec![0u64; dim];
        for t in terms {
            if let Some(table) = t.table {
                self.accumulate(&mut acc, &state[t.left], &state[t.right], table);
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
    }

    /// Canonical solution of `d x = c` with `c` in degree `deg`.
    fn solve(&self, c: &[u32], deg: u32) -> Option<Vector> {
        let level = &self.levels[deg as usize];
        let p = self.p;
        let rank = level.solve_pivots.len();
        for t in &level.solve_transform[rank..] {
            if dot(t, c, p) != 0 {
                return None;
            }
        }
        let mut x = vec![0u32; level.solve_cols];
        for (t, &q) in level.solve_transform.iter().zip(&level.solve_pivots) {
            x[q] = dot(t, c, p) as u32;
        }
        Some(x)
    }

    /// Canonical primitive for a longer entry, or `None` when it does not exist.
    fn particular(&self, state: &[Vector], k: usize) -> Option<Vector> {
        let deg = self.degrees[k] + 1;
        let target = self.sum_terms(state, &self.terms[k], self.dim(deg));
        self.solve(&target, deg)
    }

    fn reduce(&self, v: &mut [u32], rows: &[(usize, Vector)]) -> Vector {
        reduce_mod_p(v, rows, self.p)
    }

    /// Cohomology coordinates of a cocycle of degree `deg`.
    fn project(&self, c: &[u32], deg: u32) -> Result<Vector> {
        let Some(level) = self.levels.get(deg as usize) else {
            return Ok(Vec::new());
        };
        let mut v = c.to_vec();
        self.reduce(&mut v, &level.coboundaries);
        let coords = self.reduce(&mut v, &level.cohomology);
        if v.iter().any(|&x| x != 0) {
            return Err(Error::EngineInvariant("c(X) is not a cocycle".into()));
        }
        Ok(coords)
    }

    fn directions(&self, k: usize) -> Vec<Vector> {
        let (i, j) = self.pairs[k];
        let level = &self.levels[self.degrees[k] as usize];
        if j == i + 1 {
            level.coboundaries.iter().map(|(_, r)| r.clone()).collect()
        } else {
            level.cocycles.clone()
        }
    }

    fn combine(&self, base: &[u32], dirs: &[Vector], code: u64) -> Vector {
        let p = self.p;
        let mut x: Vec<u64> = base.iter().map(|&b| b as u64).collect();
        let mut c = code;
        for d in dirs {
            let t = c % p;
            c /= p;
            if t == 0 {
                continue;
            }
            for (xi, &di) in x.iter_mut().zip(d) {
                *xi = (*xi + t * di as u64) % p;
            }
        }
        x.into_iter().map(|v| v as u32).collect()
    }

    fn count(&self, dirs: usize) -> u64 {
        self.p.pow(dirs as u32)
    }

    /// Span of the classes `[bar(z) a_n]` and `[bar(a_1) w]` for cocycles `z`,
    /// `w` in the degrees of `x_{1n}` and `x_{2,n+1}`: the freedom left in the
    /// final layer. Shifting `x_12` or `x_{n,n+1}` by a coboundary moves these
    /// products by coboundaries, so the span does not depend on the other entries.
    fn final_span(&self) -> Result<Vec<(usize, Vector)>> {
        let n = self.n;
        let ka = self.pairs.len() - 2;
        let kb = ka + 1;
        let out = self.out_degree;
        let dim = self.dim(out);
        let mut state: Vec<Vector> = self.degrees.iter().map(|&d| vec![0; self.dim(d)]).collect();
        let first = self.entry(1, 2);
        let last = self.entry(n, n + 1);
        state[first] = self.reps[0].clone();
        state[last] = self.reps[n - 1].clone();
        let t_last = *self.output_terms.last().expect("arity at least 3");
        let t_first = self.output_terms[0];
        let mut gens = Vec::new();
        for (k, t) in [(ka, t_last), (kb, t_first)] {
            let Some(table) = t.table else { continue };
            for z in self.directions(k) {
                state[k] = z;
                let mut acc = vec![0u64; dim];
                self.accumulate(&mut acc, &state[t.left], &state[t.right], table);
                let v: Vector = acc.into_iter().map(|x| x as u32).collect();
                gens.push(self.project(&v, out)?);
            }
            state[k] = vec![0; self.dim(self.degrees[k])];
        }
        Ok(echelon_mod_p(gens, self.p))
    }
}

fn dot(a: &[u32], b: &[u32], p: u64) -> u64 {
    a.iter()
        .zip(b)
        .filter(|(&x, &y)| x != 0 && y != 0)
        .fold(0, |acc, (&x, &y)| (acc + x as u64 * y as u64) % p)
}

fn reduce_mod_p(v: &mut [u32], rows: &[(usize, Vector)], p: u64) -> Vector {
    let mut coeffs = Vec::with_capacity(rows.len());
    for (q, row) in rows {
        let c = v[*q];
        coeffs.push(c);
        if c == 0 {
            continue;
        }
        let f = p - c as u64;
        for (t, &r) in v.iter_mut().zip(row) {
            if r != 0 {
                *t = ((*t as u64 + f * r as u64) % p) as u32;
            }
        }
    }
    coeffs
}

struct Enumerator<'a> {
    plan: &'a Plan,
    dirs: Vec<Vec<Vector>>,
    span: Vec<(usize, Vector)>,
}

impl Enumerator<'_> {
    fn nonfinal(&self) -> usize {
        self.plan.pairs.len() - 2
    }

    /// Sets entry `k` from its base point and direction code; `false` on a dead end.
    fn assign(&self, state: &mut [Vector], k: usize, code: u64) -> bool {
        let plan = self.plan;
        let (i, j) = plan.pairs[k];
        let base = if j == i + 1 {
            plan.reps[i - 1].clone()
        } else {
            match plan.particular(state, k) {
                Some(b) => b,
                None => return false,
            }
        };
        state[k] = plan.combine(&base, &self.dirs[k], code);
        true
    }

    /// Canonical coset representative of the values reached from a complete
    /// choice of the shorter entries.
    fn leaf(&self, state: &mut [Vector]) -> Result<Option<Vector>> {
        let plan = self.plan;
        let ka = self.nonfinal();
        for k in [ka, ka + 1] {
            match plan.particular(state, k) {
                Some(x) => state[k] = x,
                None => return Ok(None),
            }
        }
        let out = plan.out_degree;
        let c0 = plan.sum_terms(state, &plan.output_terms, plan.dim(out));
        let mut rep = plan.project(&c0, out)?;
        plan.reduce(&mut rep, &self.span);
        Ok(Some(rep))
    }

    fn explore(&self, state: &mut Vec<Vector>, k: usize, out: &mut HashSet<Vector>) -> Result<()> {
        if k == self.nonfinal() {
            if let Some(rep) = self.leaf(state)? {
                out.insert(rep);
            }
            return Ok(());
        }
        for code in 0..self.plan.count(self.dirs[k].len()) {
            if self.assign(state, k, code) {
                self.explore(state, k + 1, out)?;
            }
        }
        Ok(())
    }

    /// First complete defining system in enumeration order.
    fn first_system(&self, state: &mut Vec<Vector>, k: usize) -> Result<bool> {
        if k == self.nonfinal() {
            return Ok(self.leaf(state)?.is_some());
        }
        for code in 0..self.plan.count(self.dirs[k].len()) {
            if self.assign(state, k, code) && self.first_system(state, k + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn echelon_mod_p(rows: Vec<Vector>, p: u64) -> Vec<(usize, Vector)> {
    let mut rows: Vec<Vector> = rows.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = pow_mod(rows[rank][col] as u64, p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col] as u64;
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = ((*x as u64 + (p - f) * y as u64) % p) as u32;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots.into_iter().zip(rows).collect()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Enumerates every defining system of `<classes>` over a prime field.
/// `budget` caps the number of partial systems; `None` reads
/// [`budget_from_env`].
pub fn massey_nfold_exhaustive(
    model: &DgaModel,
    classes: &[CohomologyClass],
    budget: Option<u64>,
) -> Result<MasseyValueSet> {
    let Field::Prime(p) = model.presentation().field() else {
        return Err(Error::Usage("exhaustive enumeration needs a prime field".into()));
    };
    let n = classes.len();
    if n < 3 {
        return Err(Error::Usage(format!("arity {n} is below 3")));
    }
    for c in classes {
        model.presentation().check(c.representative())?;
        if !model.is_cocycle(c.representative())? {
            return Err(Error::NotACocycle("input class representative".into()));
        }
    }
    let sum: i64 = classes.iter().map(|c| c.degree() as i64).sum();
    model.check_degree(sum + 2 - n as i64)?;
    let budget = budget.unwrap_or_else(budget_from_env);
    let plan = Plan::build(model, classes, p)?;
    let nonfinal = plan.pairs.len() - 2;
    let dirs: Vec<Vec<Vector>> = (0..nonfinal).map(|k| plan.directions(k)).collect();
    let exponent: u32 = dirs.iter().map(|d| d.len() as u32).sum();
    let estimate = (p as u128).checked_pow(exponent).unwrap_or(u128::MAX);
    if estimate > budget as u128 {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let en = Enumerator {
        plan: &plan,
        dirs,
        span: plan.final_span()?,
    };
    let empty_state: Vec<Vector> = plan.degrees.iter().map(|&d| vec![0; plan.dim(d)]).collect();

    // Expand a prefix breadth-first, then hand the frontier to worker threads.
    let mut frontier = vec![empty_state.clone()];
    let mut k = 0;
    while k < nonfinal && frontier.len() < 256 {
        let mut next = Vec::new();
        for state in frontier {
            for code in 0..plan.count(en.dirs[k].len()) {
                let mut s = state.clone();
                if en.assign(&mut s, k, code) {
                    next.push(s);
                }
            }
        }
        frontier = next;
        k += 1;
    }
    let reps = frontier
        .into_par_iter()
        .map(|mut state| {
            let mut out = HashSet::new();
            en.explore(&mut state, k, &mut out).map(|_| out)
        })
        .try_reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            Ok(a)
        })?;

    let span_dirs: Vec<Vector> = en.span.iter().map(|(_, r)| r.clone()).collect();
    let mut coordinates = BTreeSet::new();
    for rep in &reps {
        for code in 0..plan.count(span_dirs.len()) {
            coordinates.insert(plan.combine(rep, &span_dirs, code));
        }
    }
    let field = model.presentation().field();
    let out = plan.out_degree;
    let values = coordinates
        .iter()
        .map(|c| model.class_from_coordinates(out, &to_scalars(field, c)))
        .collect::<Result<Vec<_>>>()?;

    let witness = if coordinates.is_empty() {
        None
    } else {
        let mut state = empty_state;
        if !en.first_system(&mut state, 0)? {
            return Err(Error::EngineInvariant("value set nonempty without a system".into()));
        }
        let mut ds = DefiningSystem::new(n);
        for (k, &(i, j)) in plan.pairs.iter().enumerate() {
            ds.set(i, j, model.from_dense(plan.degrees[k], &to_scalars(field, &state[k]))?)?;
        }
        Some(ds)
    };
    Ok(MasseyValueSet {
        degree: out,
        values,
        coordinates,
        estimate,
        witness,
    })
}

fn to_scalars(field: Field, v: &[u32]) -> Vec<Scalar> {
    v.iter().map(|&x| field.from_i64(x as i64)).collect()
}
