use crate::algebra::{GeneratorDecl, Monomial, Presentation};
use crate::dga::DgaModel;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Structure constants `[e_i, e_j] = sum_k c[i][j][k] e_k` of a finite-dimensional
/// Lie algebra, antisymmetric in `i, j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    field: Field,
    dim: usize,
    constants: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebraData {
    pub fn abelian(dim: usize, field: Field) -> Self {
        LieAlgebraData {
            field,
            dim,
            constants: vec![vec![vec![field.zero(); dim]; dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Sets `[e_i, e_j] = sum_k coeffs[k] e_k` and the antisymmetric partner.
    pub fn set_bracket(&mut self, i: usize, j: usize, coeffs: Vec<Scalar>) -> Result<()> {
        if i >= self.dim || j >= self.dim || coeffs.len() != self.dim {
            return Err(Error::InvalidPresentation("bracket index out of range".into()));
        }
        if i == j {
            if coeffs.iter().any(|c| !c.is_zero()) {
                return Err(Error::InvalidPresentation(format!(
                    "[e{}, e{}] must vanish",
                    i + 1,
                    i + 1
                )));
            }
            return Ok(());
        }
        self.constants[j][i] = coeffs.iter().map(|c| -c).collect();
        self.constants[i][j] = coeffs;
        Ok(())
    }

    /// Adds `c * e_k` to `[e_i, e_j]`.
    pub fn add_bracket_term(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> Result<()> {
        let mut coeffs = self.bracket_basis(i, j).to_vec();
        coeffs[k] = &coeffs[k] + &c;
        self.set_bracket(i, j, coeffs)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.constants[i][j]
    }

    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai * bj;
                for (k, c) in self.constants[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&s * c);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    /// First basis triple `i < j < l` violating the Jacobi identity.
    pub fn jacobi_witness(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for l in j + 1..self.dim {
                    let (x, y, z) = (self.unit(i), self.unit(j), self.unit(l));
                    let t1 = self.bracket(&self.bracket(&x, &y), &z);
                    let t2 = self.bracket(&self.bracket(&y, &z), &x);
                    let t3 = self.bracket(&self.bracket(&z, &x), &y);
                    if t1.iter().zip(&t2).zip(&t3).any(|((a, b), c)| !(&(a + b) + c).is_zero()) {
                        return Some((i, j, l));
                    }
                }
            }
        }
        None
    }

    /// Whether the lower central series reaches zero.
    pub fn is_nilpotent(&self) -> bool {
        let field = self.field;
        let mut current: Vec<Vec<Scalar>> = (0..self.dim).map(|i| self.unit(i)).collect();
        let mut last_dim = self.dim;
        loop {
            let mut next = Vec::new();
            for x in 0..self.dim {
                for y in &current {
                    next.push(self.bracket(&self.unit(x), y));
                }
            }
            crate::linalg::rref(&mut next, field);
            if next.is_empty() {
                return true;
            }
            if next.len() == last_dim {
                return false;
            }
            last_dim = next.len();
            current = next;
        }
    }
}

/// The Chevalley-Eilenberg model: exterior algebra on the dual basis
/// `x1, ..., xn` with `d x^k = -sum_{i<j} c^k_ij x^i x^j`.
///
/// Rejects tables violating the Jacobi identity. Nilpotency is not required;
/// see [`LieAlgebraData::is_nilpotent`].
pub fn chevalley_eilenberg(lie: &LieAlgebraData) -> Result<DgaModel> {
    if let Some((i, j, l)) = lie.jacobi_witness() {
        return Err(Error::JacobiFailure(i + 1, j + 1, l + 1));
    }
    let n = lie.dim;
    let gens = (1..=n).map(|i| GeneratorDecl::new(format!("x{i}"), 1)).collect();
    let p = Presentation::new(lie.field, gens, n as u32)?;
    let images = ce_images(&p, lie)?;
    let model = DgaModel::new(p, images)?;
    if !model.validate()?.is_valid() {
        return Err(Error::EngineInvariant(
            "Jacobi holds but the Chevalley-Eilenberg differential does not square to zero"
                .into(),
        ));
    }
    Ok(model)
}

/// The differential images without any Jacobi check, for diagnostics.
pub fn chevalley_eilenberg_unchecked(lie: &LieAlgebraData) -> Result<DgaModel> {
    let n = lie.dim;
    let gens = (1..=n).map(|i| GeneratorDecl::new(format!("x{i}"), 1)).collect();
    let p = Presentation::new(lie.field, gens, n as u32)?;
    let images = ce_images(&p, lie)?;
    DgaModel::new(p, images)
}

fn ce_images(p: &Presentation, lie: &LieAlgebraData) -> Result<Vec<crate::algebra::GradedVector>> {
    let n = lie.dim;
    let mut images = Vec::with_capacity(n);
    for k in 0..n {
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = &lie.constants[i][j][k];
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0u16; n];
                e[i] = 1;
                e[j] = 1;
                terms.push((-c, Monomial::from_exponents(e)));
            }
        }
        images.push(p.vector_from_terms(2, terms)?);
    }
    Ok(images)
}

/// Heisenberg algebra `[e2, e1] = e3` plus an abelian line; its
/// Chevalley-Eilenberg model has `d x3 = x1 x2`.
pub fn heisenberg_plus_line(field: Field) -> LieAlgebraData {
    let mut lie = LieAlgebraData::abelian(4, field);
    lie.add_bracket_term(1, 0, 2, field.one()).expect("in range");
    lie
}

/// Lie algebra of `H(1,p)`: basis `a_1..a_p, b, c_1..c_p` with `[b, a_i] = c_i`,
/// so that `d c_i = a_i b`.
pub fn iwasawa_factor(p: usize, field: Field) -> LieAlgebraData {
    let mut lie = LieAlgebraData::abelian(2 * p + 1, field);
    for i in 0..p {
        lie.add_bracket_term(p, i, p + 1 + i, field.one()).expect("in range");
    }
    lie
}

pub fn direct_sum(a: &LieAlgebraData, b: &LieAlgebraData) -> Result<LieAlgebraData> {
    if a.field != b.field {
        return Err(Error::InvalidPresentation("summands over different fields".into()));
    }
    let mut out = LieAlgebraData::abelian(a.dim + b.dim, a.field);
    for (src, offset) in [(a, 0), (b, a.dim)] {
        for i in 0..src.dim {
            for j in 0..src.dim {
                for k in 0..src.dim {
                    out.constants[offset + i][offset + j][offset + k] = src.constants[i][j][k].clone();
                }
            }
        }
    }
    Ok(out)
}

/// Structure constants of `H(1,p) x H(1,q)`.
pub fn iwasawa_data(p: usize, q: usize, field: Field) -> LieAlgebraData {
    direct_sum(&iwasawa_factor(p, field), &iwasawa_factor(q, field)).expect("same field")
}

/// Chevalley-Eilenberg model of the Iwasawa-type nilmanifold `I(p,q)`.
pub fn iwasawa(p: usize, q: usize, field: Field) -> Result<DgaModel> {
    chevalley_eilenberg(&iwasawa_data(p, q, field))
}
