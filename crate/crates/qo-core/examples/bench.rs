use qo_core::input::parse_input;
use qo_core::np::newton_puiseux_roots;
use qo_core::rat::Rat;
use std::time::Instant;

fn main() {
    let text = std::fs::read_to_string("corpus/gbgp.qo").unwrap();
    let input = parse_input(&text).unwrap();
    let rs = input.root_set().unwrap();
    let f = rs.expand_polynomial();
    let polar = f.normalized_derivative(1).unwrap();
    let polar_bar = polar.substitute_monomial(&[1, 1]);
    let t0 = Instant::now();
    let roots = newton_puiseux_roots(&polar_bar, &Rat::new(17, 4)).unwrap();
    println!("target 17/4: {:?}", t0.elapsed());
    for r in &roots {
        println!("mult {} status {:?} series {}", r.multiplicity,
            match &r.status { qo_core::np::RootStatus::Exact => "exact".to_string(),
                qo_core::np::RootStatus::Truncated => "trunc".to_string(),
                qo_core::np::RootStatus::UnrepresentableConstant(p) => format!("stub({p})") },
            r.series);
    }
}
