//! Small reference networks with known structure.

use crate::model::Network;
use crate::scalar::{format_rational, int, rat, Rational};

/// Five complexes `A+B ⇄ C → 2A → A+B`, `A ⇄ D` with kinetic complexes
/// `1/2 A + 3/2 B`, `C`, `3 A`, `A`, `D`. Deficiency and kinetic deficiency
/// are both zero.
pub fn running_example() -> Network {
    running_example_with_orders(&rat(1, 2), &rat(3, 2), &int(3))
}

/// The same graph with kinetic complexes `a A + b B` at vertex 1 and `c A`
/// at vertex 3.
pub fn running_example_with_orders(a: &Rational, b: &Rational, c: &Rational) -> Network {
    let (a, b, c) = (format_rational(a), format_rational(b), format_rational(c));
    Network::builder(&["A", "B", "C", "D"])
        .vertex("1 A + 1 B", Some(&format!("{a} A + {b} B")))
        .vertex("1 C", Some("1 C"))
        .vertex("2 A", Some(&format!("{c} A")))
        .vertex("1 A", Some("1 A"))
        .vertex("1 D", Some("1 D"))
        .edge(1, 2, "k12")
        .edge(2, 1, "k21")
        .edge(2, 3, "k23")
        .edge(3, 1, "k31")
        .edge(4, 5, "k45")
        .edge(5, 4, "k54")
        .build()
        .expect("valid network")
}

/// `A + B ⇄ C` with kinetic complex `a A + b B` on the left.
pub fn binding(a: &Rational, b: &Rational) -> Network {
    let (a, b) = (format_rational(a), format_rational(b));
    Network::builder(&["A", "B", "C"])
        .vertex("1 A + 1 B", Some(&format!("{a} A + {b} B")))
        .vertex("1 C", Some("1 C"))
        .edge(1, 2, "k12")
        .edge(2, 1, "k21")
        .build()
        .expect("valid network")
}

/// `A ⇄ B`, `2A ⇄ A + B` with mass-action kinetics; kinetic deficiency one.
pub fn deficiency_one() -> Network {
    Network::builder(&["A", "B"])
        .mass_action_vertex("1 A")
        .mass_action_vertex("1 B")
        .mass_action_vertex("2 A")
        .mass_action_vertex("1 A + 1 B")
        .edge(1, 2, "k12")
        .edge(2, 1, "k21")
        .edge(3, 4, "k34")
        .edge(4, 3, "k43")
        .build()
        .expect("valid network")
}

/// Directed cycle `1 → 2 → … → m → 1` on species `X1..Xm` with mass-action kinetics.
pub fn cycle(m: usize) -> Network {
    let names: Vec<String> = (1..=m).map(|i| format!("X{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut b = Network::builder(&refs);
    for name in &names {
        b = b.mass_action_vertex(&format!("1 {name}"));
    }
    for i in 1..=m {
        let j = i % m + 1;
        b = b.edge(i, j, &format!("k{i}{j}"));
    }
    b.build().expect("valid network")
}
