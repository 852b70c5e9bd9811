//! Coxeter diagram rendering with the node numbering used throughout:
//! E-types print the branch node 2 above the fourth chain node, e.g.
//!
//! ```text
//! E6      2
//!         |
//! 1 - 3 - 4 - 5 - 6
//! ```

use reflect_core::rootsys::{CartanType, Family, SimpleType};

fn chain(labels: &[usize], bonds: &[&str]) -> String {
    let mut out = String::new();
    for (i, l) in labels.iter().enumerate() {
        if i > 0 {
            out.push_str(&format!(" {} ", bonds[i - 1]));
        }
        out.push_str(&l.to_string());
    }
    out
}

/// Diagram of one component; `offset` shifts the node labels.
fn component(t: &SimpleType, offset: usize, name: &str) -> String {
    let n = t.rank;
    let labels: Vec<usize> = (1..=n).map(|i| i + offset).collect();
    match t.family {
        Family::A => format!("{name} {}", chain(&labels, &vec!["-"; n.saturating_sub(1)])),
        Family::B => {
            let mut bonds = vec!["-"; n - 1];
            bonds[n - 2] = "=>";
            format!("{name} {}", chain(&labels, &bonds))
        }
        Family::C => {
            let mut bonds = vec!["-"; n - 1];
            bonds[n - 2] = "<=";
            format!("{name} {}", chain(&labels, &bonds))
        }
        Family::F => format!(
            "{name} {} - {} => {} - {}",
            labels[0], labels[1], labels[2], labels[3]
        ),
        Family::G => format!("{name} {} <= {}", labels[0], labels[1]),
        Family::D | Family::E => {
            // Branch node (label 2) hangs above the chain: above node 3
            // for D, above node 4 for E.
            let mut chain_labels = vec![labels[0]];
            chain_labels.extend(labels[2..].iter().copied());
            let line3 = chain(&chain_labels, &vec!["-"; chain_labels.len() - 1]);
            let branch_idx = if t.family == Family::D { 1 } else { 2 };
            let col: usize = chain_labels[..branch_idx]
                .iter()
                .map(|l| l.to_string().len() + 3)
                .sum();
            let mut line1 = String::from(name);
            while line1.len() < col {
                line1.push(' ');
            }
            line1.push_str(&labels[1].to_string());
            let line2 = format!("{}|", " ".repeat(col));
            format!("{line1}\n{line2}\n{line3}")
        }
    }
}

pub fn diagram(t: &CartanType) -> String {
    let mut out = Vec::new();
    let mut offset = 0;
    for comp in &t.components {
        let name = format!("{}{}", comp.family.letter(), comp.rank);
        out.push(component(comp, offset, &name));
        offset += comp.rank;
    }
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e6_block_is_exact() {
        let t = CartanType::parse("E6").unwrap();
        assert_eq!(diagram(&t), "E6      2\n        |\n1 - 3 - 4 - 5 - 6");
    }

    #[test]
    fn e7_block_is_exact() {
        let t = CartanType::parse("E7").unwrap();
        assert_eq!(diagram(&t), "E7      2\n        |\n1 - 3 - 4 - 5 - 6 - 7");
    }

    #[test]
    fn a_and_f_lines() {
        assert_eq!(diagram(&CartanType::parse("A3").unwrap()), "A3 1 - 2 - 3");
        assert_eq!(diagram(&CartanType::parse("A1").unwrap()), "A1 1");
        assert_eq!(diagram(&CartanType::parse("F4").unwrap()), "F4 1 - 2 => 3 - 4");
        assert_eq!(diagram(&CartanType::parse("B3").unwrap()), "B3 1 - 2 => 3");
    }
}
