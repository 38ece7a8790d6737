use std::collections::HashMap;

use linmap::{Field, Space};

/// Every field/dimension pair with at most 4096 vectors.
fn small_spaces() -> Vec<Space> {
    let fields = ["Fp:2", "Fp:3", "Fq:2:1,1,1", "Fp:5", "Fp:7", "Fq:2:1,1,0,1", "Fq:3:1,0,1", "Fp:11", "Fq:2:1,0,0,1,1"];
    let mut out = Vec::new();
    for desc in fields {
        let f: Field = desc.parse().unwrap();
        let q = f.finite_order().unwrap();
        let mut dim = 1;
        while q.pow(dim as u32) <= 4096 {
            out.push(Space::new(f.clone(), dim).unwrap());
            dim += 1;
        }
    }
    out
}

#[test]
fn orbits_partition_the_nonzero_vectors() {
    for space in small_spaces() {
        let f = space.field().clone();
        let q = f.finite_order().unwrap();
        let orbits = space.orbits().unwrap();
        let n = (q.pow(space.dim() as u32) - 1) / (q - 1);
        assert_eq!(orbits.len() as u64, n);
        assert_eq!(space.orbit_count().unwrap(), n);

        let mut rep_rank = u64::MAX;
        let mut position = HashMap::new();
        for (i, o) in orbits.iter().enumerate() {
            assert_eq!(o.size, q - 1);
            assert!(space.is_canonical(&o.representative));
            let r = space.rank(&o.representative).unwrap();
            assert!(rep_rank == u64::MAX || r > rep_rank, "representatives in enumeration order");
            rep_rank = r;
            assert_eq!(space.orbit_index(&o.representative), Some(i as u64));
            position.insert(o.representative.clone(), i);
        }

        let mut hits = vec![0u64; orbits.len()];
        for v in space.vectors().unwrap() {
            if space.is_zero(&v) {
                continue;
            }
            let (rep, scale) = space.canonical_rep(&v).unwrap();
            assert_eq!(space.scale(&scale, &rep).unwrap(), v);
            hits[position[&rep]] += 1;
            // the whole scalar line of v lands on the same representative
            for s in f.elements().unwrap().filter(|s| !f.is_zero(s)) {
                let w = space.scale(&s, &v).unwrap();
                assert_eq!(space.canonical_rep(&w).unwrap().0, rep);
            }
        }
        assert!(hits.iter().all(|&h| h == q - 1), "{space:?}");
    }
}
