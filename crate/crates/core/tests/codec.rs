use proptest::prelude::*;
use sicgraph_core::enumerate::enumerate_order;
use sicgraph_core::graph6::{decode, decode_str, encode};
use sicgraph_core::{Graph, Graph6Error};

#[test]
fn round_trip_all_graphs_through_order_8() {
    for n in 1..=8 {
        enumerate_order(n, &mut |g| {
            let s = encode(g);
            assert_eq!(decode_str(&s).unwrap(), *g);
            assert_eq!(encode(&decode(s.as_bytes()).unwrap()), s);
        })
        .unwrap();
    }
}

#[test]
fn table_strings_decode() {
    let expect = [("Ebtw", 6), ("Gbijmo", 8), ("Fbvzw", 7), ("Fbtzw", 7), ("Fbuzw", 7), ("Ibgzmngjg", 10), ("Gzznnk", 8)];
    for (s, n) in expect {
        let g = decode_str(s).unwrap();
        assert_eq!(g.order(), n, "{s}");
        assert_eq!(encode(&g), s);
    }
}

#[test]
fn strict_decoding() {
    assert_eq!(decode_str("Bx"), Err(Graph6Error::NonzeroPadding));
    assert!(decode_str("Bw").is_ok());
    assert!(matches!(decode_str("Bww"), Err(Graph6Error::TrailingData { .. })));
    assert!(matches!(decode_str("Eb"), Err(Graph6Error::Truncated { .. })));
}

proptest! {
    #[test]
    fn round_trip_random(n in 1usize..=32, seed in any::<u64>()) {
        let mut state = seed | 1;
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                if state & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
        }
        prop_assert_eq!(decode_str(&encode(&g)).unwrap(), g);
    }
}
