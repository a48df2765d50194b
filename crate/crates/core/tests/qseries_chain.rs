use partition_identities::enumeration::{count_table, enumerate, FamilySpec};
use partition_identities::jagged::{is_strong, maximal_blocks, remove_staircase};
use partition_identities::qseries::{
    apply_staircase, block_product_bivariate, classify_block, product_side, quadruple_sum_bivariate, sum_side,
};

const N: usize = 60;
const M: usize = 12;

#[test]
fn bivariate_chain_reaches_sum_side() {
    for t in [4u64, 5] {
        let blocks = block_product_bivariate(t, N, M).unwrap();
        let sums = quadruple_sum_bivariate(t, N, M).unwrap();
        assert_eq!(blocks, sums, "t={t}");
        let shifted = apply_staircase(&sums, t).unwrap();
        // Past x^M the truncation loses terms, so compare only where x^{M+1}
        // cannot reach: q-degree below the smallest (M+1)-part member.
        let reach = (t as usize) * (M + 1) * M / 2 + 2 * (M + 1);
        let bound = N.min(reach - 1);
        let at_one = shifted.at_x_one().unwrap();
        let sum = sum_side(t, N).unwrap();
        for e in 0..=bound {
            assert_eq!(at_one.coeff(e), sum.coeff(e), "t={t} q^{e}");
        }
    }
}

#[test]
fn x_slices_count_parts() {
    for t in [4u64, 5] {
        let shifted = apply_staircase(&quadruple_sum_bivariate(t, N, M).unwrap(), t).unwrap();
        let spec = FamilySpec::d_t(t).unwrap();
        for n in 0..=N as u64 {
            let members = enumerate(n, &spec).unwrap();
            for m in 0..=M {
                let expected = members.iter().filter(|p| p.len() == m).count() as i128;
                assert_eq!(shifted.x_slice(m).coeff(n as usize), expected, "t={t} n={n} m={m}");
            }
        }
    }
}

#[test]
fn d_t_members_decompose_into_admissible_blocks() {
    for t in 3..=7u64 {
        let spec = FamilySpec::d_t(t).unwrap();
        for n in 0..=45 {
            for p in enumerate(n, &spec).unwrap() {
                let increasing: Vec<i64> = p.parts().iter().rev().map(|&x| x as i64).collect();
                let lowered = remove_staircase(&increasing, t).unwrap();
                assert!(is_strong(&lowered, t), "t={t} {p}");
                for block in maximal_blocks(&lowered, t).unwrap() {
                    assert!(classify_block(&block.entries, t).is_some(), "t={t} {p} block {:?}", block.entries);
                }
            }
        }
    }
}

#[test]
fn series_coefficients_count_families() {
    for t in 4..=8u64 {
        let c = count_table(N as u64, &FamilySpec::c_t(t).unwrap()).unwrap();
        let d = count_table(N as u64, &FamilySpec::d_t(t).unwrap()).unwrap();
        let prod = product_side(t, N).unwrap();
        let sum = sum_side(t, N).unwrap();
        for n in 0..=N {
            assert_eq!(prod.coeff(n), c[n] as i128, "t={t} n={n}");
            assert_eq!(sum.coeff(n), d[n] as i128, "t={t} n={n}");
        }
    }
}
