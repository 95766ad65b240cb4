//! Smooth synthesis and analysis molecules, smooth atoms, Gram matrices and
//! the molecular and atomic decompositions built on the frames.

mod atoms;
mod gram;
mod operators;
mod orders;
mod validate;

pub use atoms::{atom_orders, atomic_decompose, validate_atoms, AtomCertificate, AtomicDecomposition};
pub use gram::{gram, gram_certificate, GramCertificate};
pub use operators::{molecular_analysis, molecular_synthesis, AnalysisReport};
pub use orders::{compute_orders, MoleculeOrders};
pub use validate::{l_powers, validate_molecule, Condition, MoleculeCertificate, MoleculeKind};
