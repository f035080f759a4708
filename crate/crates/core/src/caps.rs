/// Size limits for every exponential routine in the crate.
///
/// Exceeding a cap is reported as [`crate::Error::CapExceeded`], never
/// answered approximately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Vertex cap for exact stability / chromatic number.
    pub exact_vertices: usize,
    /// Vertex cap for sweeps over all `n!` orderings.
    pub orderings: usize,
    /// Enumeration of coloring vectors is allowed when the graph has at most
    /// this many non-edges ...
    pub enum_arcs: usize,
    /// ... or at most this many vertices.
    pub enum_vertices: usize,
    /// Vertex cap for stable set enumeration and exact stable set search.
    pub stable_vertices: usize,
    /// Variable cap for double description hull comparison.
    pub hull_arcs: usize,
    /// Largest odd set size searched by the separator and generated by the
    /// matching system.
    pub odd_set: usize,
    /// Largest `|S|` searched for internal inequalities.
    pub internal: usize,
    /// Largest clique family searched for clique-family inequalities.
    pub clique_family: usize,
    /// Vertex cap for exact weighted matching.
    pub weighted_matching: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            exact_vertices: 24,
            orderings: 8,
            enum_arcs: 20,
            enum_vertices: 8,
            stable_vertices: 64,
            hull_arcs: 12,
            odd_set: 9,
            internal: 9,
            clique_family: 6,
            weighted_matching: 24,
        }
    }
}

impl Caps {
    pub(crate) fn check(what: &'static str, actual: usize, cap: usize) -> crate::Result<()> {
        if actual > cap {
            Err(crate::Error::CapExceeded { what, actual, cap })
        } else {
            Ok(())
        }
    }
}
