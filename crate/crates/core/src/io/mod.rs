//! Text and JSON formats: polynomials, model files, reports, and certificates.

mod bundled;
mod model_file;
mod poly;

pub use bundled::{bundled_catalog, bundled_model, CatalogEntry};
pub use model_file::{
    field_name, parse_field, BoundEntry, GeneratorEntry, LoadedModel, ModelFile, RelationEntry,
};
pub use poly::{parse_polynomial, render_vector};
