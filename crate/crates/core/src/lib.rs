//! Topological Poincaré series of negative definite plumbed 3-manifolds, the
//! affine monoids organizing them, polynomial parts and normalized
//! Seiberg–Witten invariants, in exact arithmetic.

pub mod error;
pub mod graph;
pub mod lattice;
pub mod laurent;
pub mod lifts;
pub mod monoid;
pub mod oracle;
pub mod polyparts;
pub mod rational;
pub mod seifert;
pub mod semigroups;
pub mod series;

pub use error::{Error, Result};
pub use graph::{Classification, PlumbingGraph};
pub use lattice::{Class, DiscriminantGroup, IntersectionData, LatticeVector};
pub use laurent::Laurent;
pub use rational::Q;
pub use seifert::SeifertData;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A validated graph together with all derived linear data.
#[derive(Clone, Debug)]
pub struct Plumbing {
    pub graph: PlumbingGraph,
    pub cls: Classification,
    pub lattice: IntersectionData,
    pub group: DiscriminantGroup,
    pub seifert: SeifertData,
}

impl Plumbing {
    /// Rejects graphs carrying arrows; use [`Plumbing::with_arrows`] for
    /// curve graphs.
    pub fn new(graph: PlumbingGraph) -> Result<Self> {
        if graph.has_arrows() {
            return Err(Error::ArrowsNotAllowed);
        }
        Self::with_arrows(graph)
    }

    pub fn with_arrows(graph: PlumbingGraph) -> Result<Self> {
        let cls = Classification::new(&graph);
        let lattice = IntersectionData::new(&graph)?;
        let group = DiscriminantGroup::new(&lattice)?;
        let seifert = SeifertData::new(&graph, &cls, &lattice)?;
        Ok(Plumbing { graph, cls, lattice, group, seifert })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(PlumbingGraph::parse(text)?)
    }

    pub fn num_nodes(&self) -> usize {
        self.cls.num_nodes()
    }

    /// pi_N(E*_n) for the node with index `n`.
    pub fn node_dual(&self, n: usize) -> Vec<Q> {
        let v = self.cls.nodes[n];
        self.cls.nodes.iter().map(|&w| -self.lattice.inverse[w][v]).collect()
    }

    /// Node coordinates of an E-coordinate vector.
    pub fn project(&self, e: &[Q]) -> Vec<Q> {
        self.cls.nodes.iter().map(|&w| e[w]).collect()
    }

    pub fn node_id(&self, n: usize) -> &str {
        self.graph.id(self.cls.nodes[n])
    }
}
