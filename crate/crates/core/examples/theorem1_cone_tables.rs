//! Cone vertices, symbolic in a and exact at a = 1/2.

use phasemaj::poly::ratio;
use phasemaj::theorems::{all_vertices, cone_vertex_generic, ConeVertexSpec};
use phasemaj::Poly;

fn show(p: &Poly) -> String {
    p.to_string().replace('z', "a")
}

fn main() {
    for v in all_vertices(3, &ratio(1, 2)).unwrap() {
        let sym = cone_vertex_generic(&v.spec, &Poly::x());
        let vector: Vec<String> = sym.vector.iter().map(show).collect();
        let lambdas: Vec<String> = sym.lambdas.iter().map(show).collect();
        println!("{}: ({}) lambdas ({})", v.spec, vector.join(", "), lambdas.join(", "));
    }
    let spec: ConeVertexSpec = "λλ0λλ0λ".parse().unwrap();
    let sym = cone_vertex_generic(&spec, &Poly::x());
    println!("{spec}: {}", sym.vector.iter().map(show).collect::<Vec<_>>().join(", "));
}
