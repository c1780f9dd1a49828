use hkq_core::arith::{int, rat, Rational};
use hkq_core::density::{f_n3_at, N3Value};
use hkq_core::frobenius::{graded_lengths, total_colength, PairValue, QuadricContext};
use hkq_core::oracle::{graded_lengths_with, OracleConfig};
use num_bigint::BigInt;

fn oracle(n: u32, p: u64, s: u32) -> Vec<u128> {
    graded_lengths_with(&OracleConfig::default(), n, p, s).unwrap()
}

#[test]
fn brackets_contain_oracle_at_level_two() {
    let mut open = 0;
    for (n, p) in [(4u32, 3u64), (4, 5), (5, 7), (6, 5)] {
        let ctx = QuadricContext::new(n, p).unwrap();
        let ours = graded_lengths(&ctx, 2).unwrap();
        let want = oracle(n, p, 2);
        assert!(want.len() <= ours.len());
        for (d, v) in ours.iter().enumerate() {
            let o = BigInt::from(want.get(d).copied().unwrap_or(0));
            assert!(v.contains(&o), "n={n} p={p} d={d}: {o} not in {v:?}");
            if !v.is_exact() {
                open += 1;
            }
        }
    }
    assert!(open > 0, "expected some two-spinor brackets at s=2");
}

#[test]
fn n3_totals_exact_at_depth() {
    for (p, s, want) in [(3u64, 2u32, 7937u128), (5, 2, 472289), (7, 2, 6968097)] {
        let ctx = QuadricContext::new(3, p).unwrap();
        assert_eq!(total_colength(&ctx, s).unwrap(), PairValue::Exact(BigInt::from(want)));
        assert_eq!(oracle(3, p, s).iter().sum::<u128>(), want);
    }
}

#[test]
fn tree_is_the_limit_of_scaled_colengths() {
    // ell_{xq}/q^3 -> f(x) with error O(1/q); compare at q = 7^3 for x = m/49.
    let (p, s) = (7u64, 3u32);
    let q = p.pow(s) as usize;
    let lens = oracle(3, p, s);
    for m in [100i64, 110, 117, 120, 122, 125, 130] {
        let x = rat(m, 49);
        let N3Value::Exact(f) = f_n3_at(p, &x, 6).unwrap() else { panic!("x={x} not resolved") };
        let d = m as usize * q / 49;
        let scaled = int(lens[d] as u64) / int(q as u64).pow(3);
        let err: Rational = num_traits::Signed::abs(&(scaled - f));
        assert!(err < rat(4, q as i64), "x={x} err={err}");
    }
}
