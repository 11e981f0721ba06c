use hermitia::format::{parse_algebra, parse_g8, serialize_algebra};
use hermitia_core::family::G8Parameters;
use hermitia_core::{q, LieAlgebra, Matrix, Rational, Tolerance};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, d)| q(p, d))
}

prop_compose! {
    fn algebra()(n in 1usize..=5)(
        n in Just(n),
        diag in proptest::collection::vec((1i64..=5, 1i64..=5), n),
        brackets in proptest::collection::vec(proptest::collection::vec(rational(), n), n * (n - 1) / 2),
        acs in proptest::option::of(proptest::collection::vec(rational(), n * n)),
    ) -> (LieAlgebra<Rational>, Option<Matrix<Rational>>) {
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        let gram = Matrix::from_fn(n, n, |i, j| if i == j { q(diag[i].0, diag[i].1) } else { q(0, 1) });
        let mut l = LieAlgebra::new(names, gram, Tolerance(0.0)).unwrap();
        let mut it = brackets.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                l.set_bracket(i, j, &it.next().unwrap()).unwrap();
            }
        }
        let acs = acs.map(|v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()));
        (l, acs)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn algebra_text_round_trips((l, acs) in algebra()) {
        let text = serialize_algebra(&l, acs.as_ref());
        let doc = parse_algebra(&text).unwrap();
        prop_assert_eq!(&doc.algebra, &l);
        prop_assert_eq!(&doc.acs, &acs);
        prop_assert_eq!(serialize_algebra(&doc.algebra, doc.acs.as_ref()), text);
    }

    #[test]
    fn parsed_algebras_are_antisymmetric((l, _) in algebra()) {
        let doc = parse_algebra(&serialize_algebra(&l, None)).unwrap();
        prop_assert!(doc.algebra.check_antisymmetry(Tolerance(0.0)).is_empty());
    }

    #[test]
    fn g8_blocks_round_trip(values in proptest::array::uniform13(rational())) {
        let p = G8Parameters::from_array(values);
        let body = G8Parameters::<Rational>::NAMES
            .iter()
            .zip(p.to_array())
            .map(|(n, v)| format!("{n} = {v}"))
            .collect::<Vec<_>>()
            .join(",\n  ");
        let doc = parse_g8(&format!("g8 {{\n  {body}\n}}\nsphere1 = 0 0 1\n")).unwrap();
        prop_assert_eq!(doc.params, p);
        prop_assert_eq!(doc.sphere2, None);
    }
}
