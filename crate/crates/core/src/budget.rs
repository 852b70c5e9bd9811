/// Resource caps for enumeration-heavy operations.
///
/// The default element budget of 4·10⁶ is enough to enumerate the Weyl
/// group of E₇ but rejects a full enumeration of W(E₈).  The extended
/// flag opts into the staged E₈ subsystem classification, which avoids
/// full group enumeration but still walks orbits of root subsets with
/// millions of members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of group elements an enumeration may visit.
    pub max_elements: u64,
    /// Maximum number of vertices a summit conjugacy graph may grow.
    pub max_graph: u64,
    /// Allow rank-8 extended-diagram classification runs.
    pub extended: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_elements: 4_000_000, max_graph: 1_000_000, extended: false }
    }
}

impl Budget {
    pub fn with_elements(mut self, n: u64) -> Self {
        self.max_elements = n;
        self
    }

    pub fn with_extended(mut self) -> Self {
        self.extended = true;
        self
    }

    /// Read an element-budget override from the environment variable
    /// `REFLECT_BUDGET` (a plain integer).  Invalid values are ignored.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Ok(v) = std::env::var("REFLECT_BUDGET") {
            if let Ok(n) = v.trim().parse::<u64>() {
                b.max_elements = n;
            }
        }
        b
    }
}
