//! Bundled historical ray sets in dimension 3.

use super::format::parse_rayset;
use crate::rayset::RaySet;

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub id: &'static str,
    /// The ray set in `ksset 1` format.
    pub source: &'static str,
    pub provenance: &'static str,
    pub expected_original_ks: bool,
    pub expected_extended_ks: bool,
}

impl CatalogEntry {
    pub fn rayset(&self) -> RaySet {
        parse_rayset(self.source).expect("bundled catalog files are valid")
    }
}

static CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        id: "peres-33",
        source: include_str!("../../catalog/peres-33.ks"),
        provenance: "A. Peres, J. Phys. A 24, L175 (1991)",
        expected_original_ks: true,
        expected_extended_ks: false,
    },
    CatalogEntry {
        id: "conway-kochen-31",
        source: include_str!("../../catalog/conway-kochen-31.ks"),
        provenance: "Conway-Kochen set as in A. Peres, Quantum Theory: Concepts and Methods \
                     (Kluwer, 1993); coordinates reconstructed in {0,+-1,+-2}^3 with the \
                     published counts of 71 orthogonal pairs and 17 bases",
        expected_original_ks: true,
        expected_extended_ks: false,
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn get(id: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.id == id)
}
