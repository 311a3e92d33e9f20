use modlie::classify::families;
use modlie::gfp::{Fe, Field, Matrix};
use modlie::liealg::LieAlgebra;
use modlie::pstruct::{jacobson_sum, PMapping};
use modlie::repmod::{induce, is_irreducible, restrict_pmap, InducedSpec, Representation};
use modlie::uenv::{Character, EnvAlgebra};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIELDS: &[(u32, u32)] = &[(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (3, 3)];

fn field(i: usize) -> Field {
    let (p, m) = FIELDS[i % FIELDS.len()];
    Field::new(p, m, None).unwrap()
}

fn fe(f: &Field, k: u32) -> Fe {
    f.elements().nth((k % f.order()) as usize).unwrap()
}

fn algebra(f: &Field, which: usize) -> (LieAlgebra, PMapping) {
    match which % 4 {
        0 => families::dim2(f),
        1 if f.p() > 2 => families::sl2(f),
        2 => families::dim4(f),
        _ => families::dim5(f),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(i in 0usize..8, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(i);
        let (a, b, c) = (fe(&f, a), fe(&f, b), fe(&f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
        }
        prop_assert_eq!(f.frobenius_inv(f.frobenius(a)), a);
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
    }

    #[test]
    fn artin_schreier_roots_form_a_coset(i in 0usize..8, c in any::<u32>()) {
        let f = field(i);
        let c = fe(&f, c);
        let roots = f.artin_schreier_roots(c);
        prop_assert!(roots.is_empty() || roots.len() == f.p() as usize);
        for r in &roots {
            prop_assert_eq!(f.sub(f.frobenius(*r), *r), c);
            prop_assert!(f.in_prime_field(f.sub(*r, roots[0])));
        }
        prop_assert_eq!(f.artin_schreier_solvable(c), !roots.is_empty());
    }

    #[test]
    fn rank_nullity(i in 0usize..8, seed in any::<u64>(), rows in 1usize..6, cols in 1usize..6) {
        let f = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<Vec<Fe>> = (0..rows).map(|_| (0..cols).map(|_| fe(&f, rand::Rng::gen(&mut rng))).collect()).collect();
        let m = Matrix::from_rows(&f, &data).unwrap();
        let ns = m.nullspace();
        prop_assert_eq!(m.rank() + ns.len(), cols);
        for v in ns {
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi(i in 0usize..8, which in 0usize..4, seed in any::<u64>()) {
        let f = field(i);
        let (alg, _) = algebra(&f, which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y, z] = [0, 1, 2].map(|_| alg.random_element(&mut rng));
        prop_assert_eq!(alg.bracket(&x, &y), f.vneg(&alg.bracket(&y, &x)));
        prop_assert!(alg.bracket(&x, &x).iter().all(|c| c.is_zero()));
        let jac = [
            alg.bracket(&x, &alg.bracket(&y, &z)),
            alg.bracket(&y, &alg.bracket(&z, &x)),
            alg.bracket(&z, &alg.bracket(&x, &y)),
        ];
        let sum = jac.iter().fold(alg.zero(), |acc, v| f.vadd(&acc, v));
        prop_assert!(sum.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn p_map_is_additive_up_to_jacobson(i in 0usize..8, which in 0usize..4, seed in any::<u64>()) {
        let f = field(i);
        let (alg, pm) = algebra(&f, which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (alg.random_element(&mut rng), alg.random_element(&mut rng));
        let lhs = pm.extend(&f.vadd(&a, &b));
        let rhs = f.vadd(&f.vadd(&pm.extend(&a), &pm.extend(&b)), &jacobson_sum(&alg, &a, &b));
        prop_assert_eq!(lhs, rhs);
        // ad(x^[p]) = (ad x)^p
        prop_assert_eq!(alg.ad(&pm.extend(&a)), alg.ad(&a).pow(f.p() as u64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pbw_associativity(p in prop::sample::select(vec![2u32, 3]), s in prop::collection::vec(0i64..3, 4), seed in any::<u64>()) {
        let f = Field::prime(p).unwrap();
        let (_, pm) = families::dim4(&f);
        let chi = Character::new(s.iter().map(|&v| f.from_int(v)).collect());
        let env = EnvAlgebra::new(&pm, &chi).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = [0, 1, 2].map(|_| env.random_element(&mut rng, 5));
        prop_assert_eq!(env.mul(&env.mul(&a, &b), &c), env.mul(&a, &env.mul(&b, &c)));
        let x = pm.alg.random_element(&mut rng);
        let y = pm.alg.random_element(&mut rng);
        prop_assert!(env.bracket_check(&x, &y));
        prop_assert!(env.p_relation_check(&x));
    }

    #[test]
    fn induced_dimension_law(p in prop::sample::select(vec![2u32, 3]), sx in 0i64..3, sh in 0i64..3, d in 1usize..3) {
        let f = Field::prime(p).unwrap();
        let (alg, pm) = families::dim2(&f);
        let chi = Character::new(vec![f.from_int(sh), f.from_int(sx)]);
        let h = alg.span(&[alg.basis(1)]);
        let (sub, _) = restrict_pmap(&pm, &h).unwrap();
        // x acts by a scalar c with c^p = S(x)^p, i.e. c = S(x)
        let m = Representation::new(&sub, vec![Matrix::scalar(&f, d, f.from_int(sx))]).unwrap();
        let ind = induce(&pm, &chi, &InducedSpec { subalgebra: h, module: m }).unwrap();
        prop_assert_eq!(ind.rep.dim, p as usize * d);
        prop_assert!(ind.rep.homomorphism_defects().is_empty());
        if d == 1 && sx % p as i64 != 0 {
            prop_assert!(is_irreducible(&ind.rep).unwrap().irreducible);
        }
    }
}
