//! FOR search with restarts spread over a thread pool.

use rayon::prelude::*;
use sicgraph_core::orthrep::{run_restart, Field, SearchBudget, SearchOutcome};
use sicgraph_core::Graph;

/// Runs the restarts of [`sicgraph_core::orthrep::search_for`] in parallel and returns the
/// success with the lowest restart index, so the result does not depend on `threads`.
pub fn parallel_search_for(g: &Graph, d: usize, budget: SearchBudget, seed: u64, field: Field, threads: Option<usize>) -> Option<SearchOutcome> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        b = b.num_threads(t);
    }
    let pool = b.build().expect("thread pool");
    pool.install(|| (0..budget.restarts()).into_par_iter().find_map_first(|r| run_restart(g, d, budget, seed, r, field)))
}
