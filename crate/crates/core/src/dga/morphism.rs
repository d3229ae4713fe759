use std::sync::Arc;

use super::cohomology::CohomologyClass;
use super::model::DgaModel;
use crate::algebra::{GradedVector, Monomial, Presentation};
use crate::error::{Error, Result};

/// An algebra map between models, fixed by the image of each source generator
/// and checked to commute with the differentials.
#[derive(Clone, Debug)]
pub struct DgaMorphism {
    source: Arc<DgaModel>,
    target: Arc<DgaModel>,
    images: Vec<GradedVector>,
}

impl DgaMorphism {
    pub fn new(
        source: Arc<DgaModel>,
        target: Arc<DgaModel>,
        images: Vec<GradedVector>,
    ) -> Result<Self> {
        let sp = source.presentation();
        let tp = target.presentation();
        if sp.field() != tp.field() {
            return Err(Error::InvalidMorphism("source and target fields differ".into()));
        }
        if images.len() != sp.generators().len() {
            return Err(Error::InvalidMorphism(format!(
                "{} images for {} generators",
                images.len(),
                sp.generators().len()
            )));
        }
        for (g, img) in sp.generators().iter().zip(&images) {
            tp.check(img)?;
            if img.degree() != g.degree {
                return Err(Error::InvalidMorphism(format!(
                    "image of {} has degree {}, expected {}",
                    g.name,
                    img.degree(),
                    g.degree
                )));
            }
        }
        let f = DgaMorphism {
            source,
            target,
            images,
        };
        f.check_differentials()?;
        f.check_relations()?;
        f.check_bounds()?;
        Ok(f)
    }

    pub fn identity(model: Arc<DgaModel>) -> Self {
        let p = model.presentation().clone();
        let images = (0..p.generators().len()).map(|i| p.generator_vector(i)).collect();
        DgaMorphism {
            source: model.clone(),
            target: model,
            images,
        }
    }

    /// Sends generators to the target generator of the same name, and to zero
    /// when the target has no such generator.
    pub fn by_name(source: Arc<DgaModel>, target: Arc<DgaModel>) -> Result<Self> {
        let tp = target.presentation().clone();
        let images = source
            .presentation()
            .generators()
            .iter()
            .map(|g| match tp.generator_index(&g.name) {
                Some(j) => tp.generator_vector(j),
                None => tp.zero(g.degree),
            })
            .collect();
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<DgaModel> {
        &self.source
    }

    pub fn target(&self) -> &Arc<DgaModel> {
        &self.target
    }

    pub fn images(&self) -> &[GradedVector] {
        &self.images
    }

    fn check_differentials(&self) -> Result<()> {
        for (i, g) in self.source.presentation().generators().iter().enumerate() {
            let lhs = self.apply(&self.source.differential_images()[i])?;
            let rhs = self.target.d(&self.images[i])?;
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!(
                    "does not commute with d on {}",
                    g.name
                )));
            }
        }
        Ok(())
    }

    fn check_relations(&self) -> Result<()> {
        let sp = self.source.presentation();
        let n = sp.generators().len();
        for rel in sp.relations() {
            let power = Monomial::unit(n).with_exponent(rel.generator, rel.height);
            let lhs = self.apply_monomial(&power)?;
            let mut rhs = self.target.presentation().zero(lhs.degree());
            for (c, m) in &rel.rhs {
                rhs = rhs.add(&self.apply_monomial(m)?.scale(c))?;
            }
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!(
                    "relation on {} is not preserved",
                    sp.generators()[rel.generator].name
                )));
            }
        }
        Ok(())
    }

    /// Products that vanish in the source because of a truncation bound must
    /// vanish in the target as well.
    fn check_bounds(&self) -> Result<()> {
        let sp = self.source.presentation();
        let top = self.target.truncation();
        for b in sp.bounds() {
            let prefix = &sp.generators()[..b.prefix];
            let max_gen = prefix.iter().map(|g| g.degree).max().unwrap_or(0);
            if b.max_degree >= top {
                continue;
            }
            let hi = (b.max_degree + max_gen).min(top);
            for m in monomials_in_range(sp, b.prefix, b.max_degree + 1, hi) {
                if !self.apply_monomial(&m)?.is_zero() {
                    return Err(Error::InvalidMorphism(format!(
                        "{} vanishes in the source but not in the target",
                        sp.render_monomial(&m)
                    )));
                }
            }
        }
        Ok(())
    }

    fn apply_monomial(&self, m: &Monomial) -> Result<GradedVector> {
        let tp = self.target.presentation();
        let mut acc = tp.one();
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                acc = tp.multiply(&acc, &self.images[i])?;
            }
        }
        Ok(acc)
    }

    pub fn apply(&self, v: &GradedVector) -> Result<GradedVector> {
        self.source.presentation().check(v)?;
        let mut out = self.target.presentation().zero(v.degree());
        for (m, c) in v.terms() {
            out = out.add(&self.apply_monomial(m)?.scale(c))?;
        }
        Ok(out)
    }

    /// `f_*` on cohomology.
    pub fn apply_class(&self, c: &CohomologyClass) -> Result<CohomologyClass> {
        self.target.class_of(&self.apply(c.representative())?)
    }

    /// `other` after `self`.
    pub fn then(&self, other: &DgaMorphism) -> Result<DgaMorphism> {
        if self.target.presentation().id() != other.source.presentation().id() {
            return Err(Error::MixedPresentation);
        }
        let images = self
            .images
            .iter()
            .map(|v| other.apply(v))
            .collect::<Result<_>>()?;
        DgaMorphism::new(self.source.clone(), other.target.clone(), images)
    }
}

/// Monomials on the first `prefix` generators with degree in `lo..=hi`.
fn monomials_in_range(p: &Presentation, prefix: usize, lo: u32, hi: u32) -> Vec<Monomial> {
    let gens = p.generators();
    let n = gens.len();
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        deg: u32,
        prefix: usize,
        lo: u32,
        hi: u32,
        gens: &[crate::algebra::GeneratorDecl],
        exps: &mut Vec<u16>,
        out: &mut Vec<Monomial>,
    ) {
        if i == prefix {
            if deg >= lo {
                out.push(Monomial::from_exponents(exps.clone()));
            }
            return;
        }
        let g = &gens[i];
        let max_e = if g.is_odd() { 1 } else { (hi - deg) / g.degree };
        for e in 0..=max_e {
            if deg + e * g.degree > hi {
                break;
            }
            exps[i] = e as u16;
            rec(i + 1, deg + e * g.degree, prefix, lo, hi, gens, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, 0, prefix, lo, hi, gens, &mut exps, &mut out);
    out
}
