use super::LangExpr;
use crate::automata::{Dfa, Nfa};
use crate::error::Error;
use crate::term::Letter;

/// Minimal automaton over `alphabet` for the language of `e`. Marker letters
/// outside `alphabet` make their product empty.
pub fn expr_to_dfa(e: &LangExpr, alphabet: &[Letter]) -> Result<Dfa, Error> {
    let mut alphabet = alphabet.to_vec();
    alphabet.sort();
    alphabet.dedup();
    build(e, &alphabet)
}

fn build(e: &LangExpr, alphabet: &[Letter]) -> Result<Dfa, Error> {
    Ok(match e {
        LangExpr::Empty => Dfa::trivial(alphabet, false),
        LangExpr::All => Dfa::trivial(alphabet, true),
        LangExpr::Complement(x) => build(x, alphabet)?.complement().minimize(),
        LangExpr::Union(xs) => fold(xs, alphabet, false, |x, y| x || y)?,
        LangExpr::Intersection(xs) => fold(xs, alphabet, true, |x, y| x && y)?,
        LangExpr::Product { parts, markers } => {
            if parts.len() != markers.len() + 1 {
                return Err(Error::IllLeveled(format!(
                    "{e}: parts and markers do not alternate"
                )));
            }
            let dfas = parts
                .iter()
                .map(|p| build(p, alphabet))
                .collect::<Result<Vec<_>, _>>()?;
            product_nfa(&dfas, markers).determinize(alphabet)
        }
    })
}

fn fold(
    xs: &[LangExpr],
    alphabet: &[Letter],
    unit: bool,
    op: fn(bool, bool) -> bool,
) -> Result<Dfa, Error> {
    let mut acc = Dfa::trivial(alphabet, unit);
    for x in xs {
        acc = acc.product(&build(x, alphabet)?, op)?;
    }
    Ok(acc)
}

/// Chains the automata of `L₀, …, Lₙ`, with an `aᵢ`-edge from every
/// accepting state of `Lᵢ₋₁` to the start of `Lᵢ`.
fn product_nfa(dfas: &[Dfa], markers: &[Letter]) -> Nfa {
    let mut nfa = Nfa::new(0);
    let mut offsets = Vec::with_capacity(dfas.len());
    for d in dfas {
        let base = nfa.states();
        offsets.push(base);
        for _ in 0..d.states() {
            nfa.add_state();
        }
        for q in 0..d.states() {
            for (c, &l) in d.alphabet().iter().enumerate() {
                nfa.add_transition(base + q, Some(l), base + d.next_by_index(q, c));
            }
        }
    }
    nfa.add_initial(offsets[0] + dfas[0].initial());
    for (i, &a) in markers.iter().enumerate() {
        let target = offsets[i + 1] + dfas[i + 1].initial();
        for q in 0..dfas[i].states() {
            if dfas[i].is_accepting(q) {
                nfa.add_transition(offsets[i] + q, Some(a), target);
            }
        }
    }
    let last = dfas.len() - 1;
    for q in 0..dfas[last].states() {
        if dfas[last].is_accepting(q) {
            nfa.set_accepting(offsets[last] + q, true);
        }
    }
    nfa
}
