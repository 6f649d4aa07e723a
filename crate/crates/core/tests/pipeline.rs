use proptest::prelude::*;

use xorlin::circuit::{optimize, transpose_circuit};
use xorlin::codes::{self, CodeFamily};
use xorlin::encoders::{self, Encoder};
use xorlin::gf2::BitVec;

fn bits(len: usize) -> impl Strategy<Value = BitVec> {
    prop::collection::vec(any::<bool>(), len).prop_map(|v| BitVec::from_bools(&v))
}

fn family_and_message() -> impl Strategy<Value = (CodeFamily, usize, BitVec)> {
    (prop::sample::select(CodeFamily::ALL.to_vec()), 2usize..=7)
        .prop_flat_map(|(f, k)| bits(f.message_len(k)).prop_map(move |m| (f, k, m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn codewords_match_generator((f, k, m) in family_and_message()) {
        let y = encoders::codeword(f, k, &m).unwrap();
        prop_assert_eq!(&y, &codes::naive_encode(&codes::generator(f, k).unwrap(), &m).unwrap());
        prop_assert!(codes::syndrome_is_zero(&codes::parity_check(f, k).unwrap(), &y).unwrap());
    }

    #[test]
    fn optimized_trace_evaluates_like_encoder(
        e in prop::sample::select(Encoder::ALL.to_vec()),
        k in 2usize..=6,
        seed in any::<u64>(),
    ) {
        let c = optimize(&e.trace(k).unwrap());
        let x = BitVec::from_fn(e.input_len(k), |i| (seed >> (i % 64)) & 1 == 1);
        prop_assert_eq!(c.evaluate(&x).unwrap(), e.encode(k, &x).unwrap());
    }
}

#[test]
fn transposed_shortened_parities() {
    for r in 2..=7 {
        let c = optimize(&Encoder::Shortened.trace(r).unwrap());
        let all: Vec<usize> = (0..c.outputs().len()).collect();
        let t = transpose_circuit(&c, &all).unwrap();
        assert_eq!(t.output_matrix(), c.output_matrix().transpose());
        assert_eq!(t.size() + c.inputs(), c.size() + c.outputs().len());
    }
}
