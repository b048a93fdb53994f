use arrfree_core::arrangement::{
    char_poly, char_poly_whitney, intersection_lattice, random_arrangement, ziegler_restriction,
    Arrangement, MultiArrangement, Multiplicity, WHITNEY_BOUND,
};
use arrfree_core::certificate::{verify_certificate, CertificateJson};
use arrfree_core::criteria::{flats_in_pivot, terao_check, yoshinaga_any, Outcome};
use arrfree_core::logder::{freeness, graded_piece, is_member, is_member_by_span};
use arrfree_core::polyalg::{rat, HomogPoly, RatMatrix, Rational};
use arrfree_core::verify::{
    cofactor_det, corpus, euler_decomposition, hilbert_identity, mobius_identity,
    saito_divisibility,
};
use num_traits::Zero;
use proptest::prelude::*;

fn poly(nvars: usize, degree: u32) -> impl Strategy<Value = HomogPoly> {
    let terms = prop::collection::vec(
        (prop::collection::vec(0u32..=degree, nvars), -4i64..=4),
        0..6,
    );
    terms.prop_map(move |ts| {
        // Push the leftover degree onto the last variable so each term is homogeneous.
        let ts = ts.into_iter().filter_map(|(mut e, c)| {
            let mut left = degree;
            for x in e.iter_mut().take(nvars - 1) {
                *x = (*x).min(left);
                left -= *x;
            }
            *e.last_mut()? = left;
            Some((e, rat(c)))
        });
        HomogPoly::from_terms(nvars, degree, ts).unwrap()
    })
}

fn poly_triple() -> impl Strategy<Value = (HomogPoly, HomogPoly, HomogPoly, HomogPoly)> {
    (1usize..=4, 0u32..=2, 0u32..=3)
        .prop_filter("total degree at most 5", |(_, a, b)| a + b <= 5)
        .prop_flat_map(|(n, a, b)| (poly(n, a), poly(n, b), poly(n, b), poly(n, 5 - a - b)))
}

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn square_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-3i64..=3, n), n))
}

fn arrangement() -> impl Strategy<Value = Arrangement> {
    (2usize..=4, 0usize..=3, 1i64..=2, any::<u64>())
        .prop_filter_map("rank deficient draw", |(ell, extra, bound, seed)| {
            random_arrangement(ell, ell + extra, bound, seed).ok()
        })
}

/// Graphic arrangement of a graph on `v` vertices: `x_i - x_j` per edge.
fn graphic(v: usize, edges: &[(usize, usize)]) -> Arrangement {
    let forms: Vec<Vec<i64>> = edges
        .iter()
        .map(|&(i, j)| {
            let mut f = vec![0; v];
            f[i] = 1;
            f[j] = -1;
            f
        })
        .collect();
    Arrangement::from_i64(v, &forms).unwrap()
}

fn all_edges(v: usize) -> Vec<(usize, usize)> {
    (0..v)
        .flat_map(|i| (i + 1..v).map(move |j| (i, j)))
        .collect()
}

/// Chordality by repeatedly removing a simplicial vertex.
fn is_chordal(v: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![vec![false; v]; v];
    for &(i, j) in edges {
        adj[i][j] = true;
        adj[j][i] = true;
    }
    let mut alive: Vec<usize> = (0..v).collect();
    while !alive.is_empty() {
        let simplicial = alive.iter().position(|&x| {
            let nb: Vec<usize> = alive.iter().copied().filter(|&y| adj[x][y]).collect();
            nb.iter().all(|&a| nb.iter().all(|&b| a == b || adj[a][b]))
        });
        match simplicial {
            Some(k) => {
                alive.remove(k);
            }
            None => return false,
        }
    }
    true
}

fn edge_subset(v: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    let edges = all_edges(v);
    let n = edges.len();
    prop::sample::subsequence(edges, 1..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((p, q, r, s) in poly_triple()) {
        prop_assert_eq!(q.add(&r).unwrap(), r.add(&q).unwrap());
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        prop_assert_eq!(
            p.mul(&q.add(&r).unwrap()).unwrap(),
            p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap()
        );
        prop_assert_eq!(
            p.mul(&q).unwrap().mul(&s).unwrap(),
            p.mul(&q.mul(&s).unwrap()).unwrap()
        );
        prop_assert!(q.sub(&q).unwrap().is_zero());
        prop_assert_eq!(p.mul(&HomogPoly::one(p.nvars())).unwrap(), p.clone());
        let pq = p.mul(&q).unwrap();
        prop_assert!(pq.is_zero() || pq.degree() == p.degree() + q.degree());
    }

    #[test]
    fn exact_division_inverts_multiplication((p, q, _, _) in poly_triple()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!(p.mul(&q).unwrap().div_exact(&q).unwrap(), Some(p));
    }

    #[test]
    fn identity_substitution((p, _, _, _) in poly_triple()) {
        let id = RatMatrix::identity(p.nvars());
        prop_assert_eq!(p.substitute_linear(&id).unwrap(), p);
    }

    #[test]
    fn rank_plus_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 12), 1..=12),
                         cols in 1usize..=12) {
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|r| r[..cols].to_vec()).collect();
        let m = RatMatrix::from_i64(&rows);
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn bareiss_matches_cofactor(rows in square_matrix(5)) {
        let m = RatMatrix::from_i64(&rows);
        let data: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        let det = m.det().unwrap();
        prop_assert_eq!(&det, &cofactor_det(&data));
        match m.inverse().unwrap() {
            Some(inv) => {
                prop_assert!(!det.is_zero());
                prop_assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(rows.len()));
            }
            None => prop_assert!(det.is_zero()),
        }
    }

    #[test]
    fn transpose_preserves_rank(rows in small_matrix(7)) {
        let m = RatMatrix::from_i64(&rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lattice_invariants(a in arrangement()) {
        let ma = MultiArrangement::simple(a.clone());
        prop_assert!(mobius_identity(&ma).unwrap().0);
        let chi = char_poly(&a);
        prop_assert_eq!(&chi, &char_poly_whitney(&a, WHITNEY_BOUND).unwrap());
        prop_assert_eq!(chi.eval(1), 0);
        let ell = a.dim();
        for (k, &c) in chi.coeffs().iter().enumerate() {
            prop_assert!(c == 0 || (c > 0) == ((ell - k) % 2 == 0));
        }
        prop_assert_eq!(chi.coeffs()[ell - 1].unsigned_abs() as usize, a.len());
        prop_assert_eq!(chi.coeffs()[ell], 1);
    }

    #[test]
    fn localization_is_lower_interval(a in arrangement()) {
        let lattice = intersection_lattice(&a);
        for (j, flat) in lattice.flats().iter().enumerate() {
            let local = intersection_lattice(&a.localization(flat).unwrap());
            let interval = lattice.lower_interval(j);
            prop_assert_eq!(local.len(), interval.len());
            let mut dims: Vec<usize> = local.flats().iter().map(|f| f.codim()).collect();
            let mut expected: Vec<usize> =
                interval.iter().map(|&i| lattice.flats()[i].codim()).collect();
            dims.sort_unstable();
            expected.sort_unstable();
            prop_assert_eq!(dims, expected);
            let top = local.len() - 1;
            prop_assert_eq!(local.mobius(top), lattice.mobius(j));
        }
    }

    #[test]
    fn restriction_conserves_count(a in arrangement(), pick in any::<prop::sample::Index>()) {
        let pivot = pick.index(a.len());
        let z = ziegler_restriction(&a, pivot).unwrap();
        prop_assert_eq!(z.multi.total() as usize, a.len() - 1);
        prop_assert_eq!(z.multi.dim(), a.dim() - 1);
        let grouped: usize = z.groups.iter().map(Vec::len).sum();
        prop_assert_eq!(grouped, a.len() - 1);
    }

    #[test]
    fn flats_in_pivot_match_scan(a in arrangement(), pick in any::<prop::sample::Index>()) {
        let pivot = pick.index(a.len());
        let alpha = a.form(pivot).to_poly();
        let scanned: Vec<Vec<usize>> = intersection_lattice(&a)
            .flats()
            .iter()
            .filter(|f| f.dim() >= 1)
            .filter(|f| {
                f.basis().iter().all(|b| {
                    let point: Vec<Rational> = b.iter().cloned().map(Rational::from_integer).collect();
                    alpha.eval(&point).unwrap().is_zero()
                })
            })
            .map(|f| f.indices().to_vec())
            .collect();
        let found: Vec<Vec<usize>> = flats_in_pivot(&a, pivot)
            .unwrap()
            .iter()
            .map(|f| f.indices().to_vec())
            .collect();
        prop_assert_eq!(found, scanned);
    }

    #[test]
    fn pieces_are_members(a in arrangement(), m in prop::collection::vec(1u32..=2, 7), d in 0u32..=3) {
        let m = Multiplicity::new(m[..a.len()].to_vec());
        let ma = MultiArrangement::new(a, m).unwrap();
        for delta in graded_piece(&ma, d).elements {
            prop_assert!(is_member(&delta, &ma).unwrap());
            prop_assert!(is_member_by_span(&delta, &ma).unwrap());
        }
    }

    #[test]
    fn euler_decomposes(a in arrangement()) {
        prop_assert!(euler_decomposition(&MultiArrangement::simple(a), 3).unwrap().0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn certificates_are_deterministic_and_recheck(a in arrangement()) {
        let ma = MultiArrangement::simple(a);
        let first = CertificateJson::new(&freeness(&ma).unwrap()).unwrap();
        let second = CertificateJson::new(&freeness(&ma).unwrap()).unwrap();
        prop_assert_eq!(first.to_json_pretty(), second.to_json_pretty());
        prop_assert!(verify_certificate(&CertificateJson::parse(&first.to_json_pretty()).unwrap()).is_ok());
    }

    #[test]
    fn graphic_freeness_is_chordality(edges in edge_subset(5)) {
        let a = graphic(5, &edges);
        let cert = freeness(&MultiArrangement::simple(a.clone())).unwrap();
        prop_assert_eq!(cert.is_free(), is_chordal(5, &edges), "edges {:?}", edges);
        prop_assert!(cert.is_free() || cert.is_nonfree());
        prop_assert!(terao_check(&a).is_ok());
    }

    #[test]
    fn saito_divides(seed in any::<u64>()) {
        let (ok, detail) = saito_divisibility(&corpus()[..8], 4, seed).unwrap();
        prop_assert!(ok, "{}", detail);
    }

    #[test]
    fn multiarrangement_hilbert(m in prop::collection::vec(1u32..=3, 3)) {
        let a = Arrangement::from_i64(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let ma = MultiArrangement::new(a, Multiplicity::new(m)).unwrap();
        let cert = freeness(&ma).unwrap();
        // Every multiarrangement in the plane is free.
        prop_assert!(cert.is_free());
        prop_assert!(hilbert_identity(&ma).unwrap().0);
    }
}

#[test]
fn graphic_four_vertices_exhaustive() {
    let edges = all_edges(4);
    for mask in 1u32..(1 << edges.len()) {
        let chosen: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let a = graphic(4, &chosen);
        let ma = MultiArrangement::simple(a.clone());
        let cert = freeness(&ma).unwrap();
        assert_eq!(cert.is_free(), is_chordal(4, &chosen), "{chosen:?}");
        assert!(hilbert_identity(&ma).unwrap().0, "{chosen:?}");
        let terao = terao_check(&a).unwrap();
        assert_eq!(terao.outcome, Outcome::Consistent);
        let report = yoshinaga_any(&a).unwrap();
        assert_eq!(report.agrees_with_direct(), Some(true), "{chosen:?}");
    }
}
