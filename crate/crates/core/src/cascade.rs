//! The filter cascade that eliminates a graph or lets it survive.
//!
//! Filters, in order: `1` (the graph or its complement is disconnected), `2.1` (some
//! clique has at least χ_f vertices), `2.2` (the pair structure exists at
//! `t = ⌈χ_f⌉`), and `3.1`..`3.7` (a table graph with `χ_f <= Ξ` is an induced subgraph).
//! Each eliminating filter except `1` yields a witness that [`FilterVerdict::recheck`]
//! verifies independently.

use alloc::vec::Vec;
use core::fmt;

use crate::cliques::{find_pair_structure, max_clique, PairStructureWitness};
use crate::fracchrom::{ceil_to_usize, frac_chromatic_value, Rational};
use crate::graph::{Graph, VertexSet};
use crate::iso::{filter_graphs, find_induced_embedding, Embedding, FilterGraph};

/// Outcome of the cascade.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterId {
    Disconnected,
    CliqueBound,
    PairStructure,
    /// Table graph `1..=7`.
    Pattern(u8),
    Survived,
}

impl FilterId {
    /// Eliminating filters in cascade order.
    pub const CASCADE: [FilterId; 10] = [
        FilterId::Disconnected,
        FilterId::CliqueBound,
        FilterId::PairStructure,
        FilterId::Pattern(1),
        FilterId::Pattern(2),
        FilterId::Pattern(3),
        FilterId::Pattern(4),
        FilterId::Pattern(5),
        FilterId::Pattern(6),
        FilterId::Pattern(7),
    ];

    /// Position in [`FilterId::CASCADE`]; `Survived` comes last.
    pub fn position(self) -> usize {
        match self {
            FilterId::Disconnected => 0,
            FilterId::CliqueBound => 1,
            FilterId::PairStructure => 2,
            FilterId::Pattern(k) => 2 + k as usize,
            FilterId::Survived => 10,
        }
    }

    pub fn label(self) -> &'static str {
        const LABELS: [&str; 11] = ["1", "2.1", "2.2", "3.1", "3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "survived"];
        LABELS[self.position()]
    }

    pub fn parse(s: &str) -> Option<FilterId> {
        FilterId::CASCADE.into_iter().chain([FilterId::Survived]).find(|f| f.label() == s)
    }
}

impl fmt::Display for FilterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Clique(VertexSet),
    Pairs(PairStructureWitness),
    /// Induced embedding of table graph `filter`.
    Embedding { filter: u8, embedding: Embedding },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, it: impl Iterator<Item = usize>) -> fmt::Result {
            for (i, v) in it.enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
        match self {
            Witness::Clique(s) => {
                f.write_str("clique=")?;
                list(f, s.iter())
            }
            Witness::Pairs(w) => {
                f.write_str("pairs=")?;
                for (i, (a, b)) in w.pairs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}-{b}")?;
                }
                f.write_str(" singletons=")?;
                list(f, w.singletons.iter().copied())
            }
            Witness::Embedding { filter, embedding } => {
                write!(f, "pattern=3.{filter} map=")?;
                list(f, embedding.map.iter().copied())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterVerdict {
    pub filter: FilterId,
    pub witness: Option<Witness>,
    /// Computed unless filter `1` fired.
    pub chi_f: Option<Rational>,
}

/// Reusable classifier holding the decoded filter table.
#[derive(Clone, Debug)]
pub struct Classifier {
    filters: Vec<FilterGraph>,
}

impl Default for Classifier {
    fn default() -> Self {
        Self::new()
    }
}

impl Classifier {
    pub fn new() -> Self {
        Classifier { filters: filter_graphs() }
    }

    pub fn filters(&self) -> &[FilterGraph] {
        &self.filters
    }

    pub fn classify(&self, g: &Graph) -> FilterVerdict {
        self.classify_with(g, frac_chromatic_value)
    }

    /// As [`Classifier::classify`], with χ_f supplied by `chi_f` (called at most once).
    pub fn classify_with<F: FnOnce(&Graph) -> Rational>(&self, g: &Graph, chi_f: F) -> FilterVerdict {
        if !g.is_connected() || !g.complement().is_connected() {
            return FilterVerdict {
                filter: FilterId::Disconnected,
                witness: None,
                chi_f: None,
            };
        }
        let x = chi_f(g);
        let verdict = |filter, witness| FilterVerdict {
            filter,
            witness: Some(witness),
            chi_f: Some(x.clone()),
        };

        let clique = max_clique(g);
        if Rational::from_integer(clique.len().into()) >= x {
            return verdict(FilterId::CliqueBound, Witness::Clique(clique));
        }
        let t = ceil_to_usize(&x);
        if let Some(w) = find_pair_structure(g, t) {
            return verdict(FilterId::PairStructure, Witness::Pairs(w));
        }
        // the smallest table graph has 6 vertices
        if g.order() >= 6 {
            for f in &self.filters {
                if f.graph.order() > g.order() || x > Rational::from_integer(f.xi.into()) {
                    continue;
                }
                if let Some(embedding) = find_induced_embedding(&f.graph, g) {
                    return verdict(
                        FilterId::Pattern(f.index),
                        Witness::Embedding {
                            filter: f.index,
                            embedding,
                        },
                    );
                }
            }
        }
        FilterVerdict {
            filter: FilterId::Survived,
            witness: None,
            chi_f: Some(x),
        }
    }
}

/// Classifies with a fresh [`Classifier`].
pub fn classify(g: &Graph) -> FilterVerdict {
    Classifier::new().classify(g)
}

impl FilterVerdict {
    /// Independently re-checks the verdict's evidence: the witness holds in `g` and the
    /// lower bound it implies on the faithful dimension is at least χ_f. For filter `1`
    /// the connectivity test is repeated.
    pub fn recheck(&self, g: &Graph, classifier: &Classifier) -> bool {
        let disconnected = !g.is_connected() || !g.complement().is_connected();
        let chi = match (&self.filter, &self.chi_f) {
            (FilterId::Disconnected, _) => return disconnected && self.witness.is_none(),
            (_, Some(x)) => x,
            (_, None) => return false,
        };
        let at_least = |bound: usize| Rational::from_integer(bound.into()) >= *chi;
        match (&self.filter, &self.witness) {
            (FilterId::Survived, None) => !disconnected,
            (FilterId::CliqueBound, Some(Witness::Clique(s))) => g.is_clique(*s) && at_least(s.len()),
            (FilterId::PairStructure, Some(Witness::Pairs(w))) => {
                w.verify(g) && at_least(w.bound()) && Rational::from_integer(w.bound().into()) < chi + Rational::from_integer(1.into())
            }
            (FilterId::Pattern(k), Some(Witness::Embedding { filter, embedding })) if k == filter => classifier
                .filters()
                .iter()
                .find(|f| f.index == *k)
                .is_some_and(|f| embedding.verify(&f.graph, g) && at_least(f.xi)),
            _ => false,
        }
    }
}
