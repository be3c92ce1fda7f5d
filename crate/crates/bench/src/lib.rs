//! Benchmark fixtures shared by the criterion targets.

use metacirc_core::cayley::{build_cayley, standard_connection_set};
use metacirc_core::{Graph, GroupSpec};

/// `Cay(G, S_j)` for `G = Z_m : Z_n` with twist `r`.
pub fn standard_graph(m: u64, n: u64, r: u64, j: u64) -> (GroupSpec, Graph) {
    let spec = GroupSpec::new(m, n, r, 1).expect("valid fixture");
    let set = standard_connection_set(j, &spec).expect("valid j");
    (spec, build_cayley(&set, &spec))
}
