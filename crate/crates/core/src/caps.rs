//! Explicit brute-force limits. Every cap overflow is an error, never a
//! silent truncation.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of elements a closure enumeration may produce.
    pub elements: usize,
    /// Maximum size of an explicitly enumerated conjugation orbit.
    pub orbit: usize,
    /// Maximum degree (index) of a coset action.
    pub coset_degree: usize,
    /// Maximum group order for the regular-action embedding.
    pub regular: u64,
    /// Maximum group order for exhaustive subgroup enumeration.
    pub subgroup_elements: u64,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            elements: 100_000,
            orbit: 1_000_000,
            coset_degree: 10_000,
            regular: 5_000,
            subgroup_elements: 10_000,
        }
    }
}

impl Caps {
    pub fn with_elements(mut self, elements: usize) -> Caps {
        self.elements = elements;
        self
    }

    pub fn with_orbit(mut self, orbit: usize) -> Caps {
        self.orbit = orbit;
        self
    }
}
