//! Built-in scenarios with pinned seeds.

use super::scenario::{
    AComponent, BComponent, BStateSpec, BetaEstimate, FamilySpec, GeneratorSpec, PredictionSpec,
    Scenario,
};

pub fn demo_names() -> &'static [&'static str] {
    &["example1", "example2", "example2-correlated", "example3"]
}

fn geometric(start_power: i32, rotate: bool) -> AComponent {
    AComponent::Geometric {
        scale: 1.0,
        ratio: 0.5,
        start_power,
        rotate,
    }
}

fn strings(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect()
}

/// Block `BAB` with `A = [[D, U₁DU₁*], [U₁DU₁*, U₂DU₂*]]` and
/// `B = [[G₁², G₂²], [G₂², G₃²]]`.
fn example1() -> Scenario {
    let b_block = strings(&[&["b1*b1", "b2*b2"], &["b2*b2", "b3*b3"]]);
    Scenario {
        name: "example1".into(),
        n: 300,
        seed: 20_240_101,
        trials: 5,
        a_spec: FamilySpec {
            components: vec![geometric(0, false), geometric(0, true), geometric(0, true)],
            generators: Some(vec![GeneratorSpec::Block {
                block: vec![vec![1, 2], vec![2, 3]],
            }]),
        },
        b_spec: FamilySpec {
            components: vec![
                BComponent::GueSquared,
                BComponent::GueSquared,
                BComponent::GueSquared,
            ],
            generators: Some(vec![GeneratorSpec::Block {
                block: vec![vec![1, 2], vec![2, 3]],
            }]),
        },
        haar_conjugate_b: false,
        expression: "b1*a1*b1".into(),
        prediction: PredictionSpec::Chain {
            b0: b_block.clone(),
            chain: vec![strings(&[&["a1", "a2"], &["a2", "a3"]]), b_block],
            b_state: BStateSpec::FreeSemicircular,
        },
        compare_top: 15,
        truncation: 64,
    }
}

/// `UBU*AUCU* + UCU*AUBU*` with β estimated from the sampled `B`, `C`.
fn example2(correlated: bool) -> Scenario {
    let second = if correlated {
        BComponent::SameAs { component: 1 }
    } else {
        BComponent::Gue
    };
    Scenario {
        name: if correlated {
            "example2-correlated"
        } else {
            "example2"
        }
        .into(),
        n: 300,
        seed: if correlated { 20_240_203 } else { 20_240_202 },
        trials: 5,
        a_spec: FamilySpec {
            components: vec![geometric(0, false)],
            generators: None,
        },
        b_spec: FamilySpec {
            components: vec![BComponent::Gue, second],
            generators: None,
        },
        haar_conjugate_b: true,
        expression: "b1*a1*b2 + b2*a1*b1".into(),
        prediction: PredictionSpec::SumBac {
            bprime: None,
            estimate: Some(BetaEstimate {
                b: vec![1, 2],
                c: vec![2, 1],
            }),
            a: 1,
        },
        compare_top: 10,
        truncation: 64,
    }
}

/// `A + BABAB` with `A = UDU*`, `D = diag(2⁻¹, 2⁻², …)` and `B = G²`.
fn example3() -> Scenario {
    Scenario {
        name: "example3".into(),
        n: 300,
        seed: 20_240_303,
        trials: 5,
        a_spec: FamilySpec {
            components: vec![geometric(1, true)],
            generators: None,
        },
        b_spec: FamilySpec {
            components: vec![BComponent::GueSquared],
            generators: None,
        },
        haar_conjugate_b: false,
        expression: "a1 + b1*a1*b1*a1*b1".into(),
        prediction: PredictionSpec::SumBab {
            diagonal: vec!["a1".into(), "a1*a1".into()],
            gram: vec![vec![1.0, 1.0], vec![1.0, 2.0]],
        },
        compare_top: 10,
        truncation: 64,
    }
}

pub fn demo_scenario(name: &str) -> Option<Scenario> {
    match name {
        "example1" => Some(example1()),
        "example2" => Some(example2(false)),
        "example2-correlated" => Some(example2(true)),
        "example3" => Some(example3()),
        _ => None,
    }
}
