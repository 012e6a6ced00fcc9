//! Exact arithmetic in the partition and Brauer diagram algebras, their
//! layer stratification, and the decomposition of layer restrictions of
//! permutation modules into symmetric-group permutation modules — every
//! decomposition double-checked by an independent linear-algebra character
//! oracle over exact rationals.
//!
//! All scalars are Laurent polynomials in the loop parameter δ over ℚ (or
//! exact rationals after specialization); there is no floating point
//! anywhere. All enumeration orders, coset representatives, and report
//! fields are pinned, so identical inputs produce byte-identical reports.

pub mod algebra;
pub mod decompose;
pub mod delta;
pub mod diagram;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod partial;
pub mod perm;
pub mod stabilizer;
pub mod stratify;
pub mod tabloid;

pub use algebra::AlgebraElement;
pub use delta::{DeltaPoly, DeltaValue};
pub use diagram::{Dot, Row, SetPartitionDiagram};
pub use error::{Error, Result};
pub use partial::PartialDiagram;
pub use perm::{Composition, Permutation};
pub use stratify::Algebra;
pub use tabloid::Tabloid;

/// Size caps for the enumerative kernels. Exceeding a cap is always an
/// error, never a silent approximation.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Caps {
    /// Largest diagram or partial-diagram basis that may be enumerated.
    pub basis: u64,
    /// Largest tabloid coset space.
    pub coset: u64,
    /// Largest group enumeration (Young subgroups, Σ_n listings).
    pub group: u64,
    /// Largest symbol count (columns) in an oracle matrix.
    pub matrix: u64,
    /// Largest ambient size for the exhaustive module-action sweep (it is
    /// cubic in the diagram basis).
    pub action: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            basis: 1_000_000,
            coset: 1_000_000,
            group: 1_000_000,
            matrix: 20_000,
            action: 5,
        }
    }
}

impl Caps {
    /// Apply comma-separated `name=value` overrides, e.g.
    /// `coset=500000,matrix=40000`. Unknown names are an error.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<()> {
        for pair in spec.split(',').filter(|s| !s.trim().is_empty()) {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad cap override `{pair}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cap value `{value}`")))?;
            match name.trim() {
                "basis" => self.basis = value,
                "coset" => self.coset = value,
                "group" => self.group = value,
                "matrix" => self.matrix = value,
                "action" => self.action = value as usize,
                other => return Err(Error::Parse(format!("unknown cap `{other}`"))),
            }
        }
        Ok(())
    }
}
