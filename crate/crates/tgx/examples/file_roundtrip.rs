//! The text format round-trips instances exactly.

use tgx::format::{parse_instance, serialize_instance};
use tgx::gen_random;

fn main() {
    let inst = gen_random(6, 4, 3, 9, 7).unwrap();
    let text = serialize_instance(&inst);
    println!("{text}");

    let back = parse_instance(&text).unwrap();
    assert_eq!(back.graph, inst.graph);
    assert_eq!(back.weights, inst.weights);
    assert_eq!(back.source, inst.source);
    assert_eq!(back.k, inst.k);
    println!("round trip: exact");
}
