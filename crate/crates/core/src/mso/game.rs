//! The sentence stating that Duplicator wins the congruence game on the
//! input word, for a language with a neutral letter.
//!
//! Coding:
//! * an interval family is a pair of sets `(X, Y)` of left and right
//!   endpoints;
//! * rounds 1 and 2 quantify such pairs, universally for Spoiler and
//!   existentially for Duplicator; Duplicator's `Wᵢ` are a subfamily of
//!   Spoiler's, and left endpoints of `W`s and `V`s alternate;
//! * rounds 3 and 4 colour the positions: one colour per letter, the neutral
//!   letter outside the intervals and at each left endpoint (so every word
//!   is shorter than its interval). A colouring over `k` letters is a chain
//!   `S₁ ⊆ ⋯ ⊆ S_{k-1}` with colour `j` on `S_j \ S_{j-1}` and the neutral
//!   colour outside `S_{k-1}`, which keeps the sentence linear in `k`;
//! * round 5 is an infinite subset `I` of the left endpoints of the `W`s;
//! * round 6 guesses a bit `B` and requires, for both products (selected by
//!   whether `T` is empty), that the partition `Z̄` coding the product is in
//!   `L` iff the bit is set. This mentions the language once.

use crate::error::{Error, Result};
use crate::words::Alphabet;

use super::Formula;
use Formula::{And, Or};

struct Names {
    next: usize,
}

impl Names {
    fn fresh(&mut self, stem: &str) -> String {
        self.next += 1;
        format!("{stem}{}", self.next)
    }
}

fn not(f: Formula) -> Formula {
    Formula::not(f)
}

fn mem(x: &str, s: &str) -> Formula {
    Formula::member(x, s)
}

fn le(x: &str, y: &str) -> Formula {
    Or(vec![Formula::less(x, y), Formula::equal(x, y)])
}

impl Names {
    fn exists_in(&mut self, set: &str, body: impl FnOnce(&mut Self, &str) -> Formula) -> Formula {
        let x = self.fresh("p");
        let inner = body(self, &x);
        Formula::exists1(&x, And(vec![mem(&x, set), inner]))
    }

    /// No right endpoint in `[x, p)`.
    fn open_from(&mut self, x: &str, p: &str, right: &str) -> Formula {
        let x = x.to_string();
        let p = p.to_string();
        not(self.exists_in(right, |_, y| And(vec![le(&x, y), Formula::less(y, &p)])))
    }

    /// `p` lies in an interval of `(left, right)`.
    fn in_interval(&mut self, p: &str, left: &str, right: &str) -> Formula {
        let p = p.to_string();
        self.exists_in(left, |n, x| {
            let open = n.open_from(x, &p, right);
            And(vec![le(x, &p), open])
        })
    }

    fn forall_pos(&mut self, body: impl FnOnce(&mut Self, &str) -> Formula) -> Formula {
        let p = self.fresh("p");
        let inner = body(self, &p);
        Formula::forall1(&p, inner)
    }

    fn infinite(&mut self, set: &str) -> Formula {
        self.forall_pos(|n, p| {
            let p = p.to_string();
            n.exists_in(set, |_, x| Formula::less(&p, x))
        })
    }

    fn subset(&mut self, a: &str, b: &str) -> Formula {
        self.forall_pos(|_, p| Formula::implies(mem(p, a), mem(p, b)))
    }

    /// Disjoint intervals with left endpoints `left` and right endpoints `right`, infinitely many.
    fn family(&mut self, left: &str, right: &str) -> Formula {
        let (x1, x2) = (self.fresh("p"), self.fresh("p"));
        let gap = self.exists_in(right, |_, y| And(vec![le(&x1, y), Formula::less(y, &x2)]));
        let disjoint = Formula::forall1(
            &x1,
            Formula::forall1(
                &x2,
                Formula::implies(And(vec![mem(&x1, left), mem(&x2, left), Formula::less(&x1, &x2)]), gap),
            ),
        );
        let closed = self.forall_pos(|n, x| {
            let x = x.to_string();
            let end = n.exists_in(right, |_, y| le(&x, y));
            Formula::implies(mem(&x, left), end)
        });
        let ends = self.forall_pos(|n, y| {
            let y = y.to_string();
            let start = n.exists_in(left, |n, x| {
                let open = n.open_from(x, &y, right);
                And(vec![le(x, &y), open])
            });
            Formula::implies(mem(&y, right), start)
        });
        let inf = self.infinite(left);
        And(vec![disjoint, closed, ends, inf])
    }

    /// `(sub_l, sub_r)` picks whole intervals of `(left, right)`, infinitely many.
    fn subfamily(&mut self, sub_l: &str, sub_r: &str, left: &str, right: &str) -> Formula {
        let sl = self.subset(sub_l, left);
        let sr = self.subset(sub_r, right);
        let (x, y) = (self.fresh("p"), self.fresh("p"));
        let open = self.open_from(&x, &y, right);
        let closes = And(vec![mem(&x, left), mem(&y, right), le(&x, &y), open]);
        let same = Formula::forall1(
            &x,
            Formula::forall1(&y, Formula::implies(closes, Formula::iff(mem(&x, sub_l), mem(&y, sub_r)))),
        );
        let inf = self.infinite(sub_l);
        And(vec![sl, sr, same, inf])
    }

    /// Between two left endpoints of one family lies a left endpoint of the other.
    fn interleaved(&mut self, a: &str, b: &str) -> Formula {
        let (p, q) = (self.fresh("p"), self.fresh("p"));
        let between = self.exists_in(b, |_, r| And(vec![Formula::less(&p, r), Formula::less(r, &q)]));
        Formula::forall1(
            &p,
            Formula::forall1(&q, Formula::implies(And(vec![mem(&p, a), mem(&q, a), Formula::less(&p, &q)]), between)),
        )
    }

    fn colour(&mut self, p: &str, chain: &[String], j: usize) -> Formula {
        let k = chain.len() + 1;
        if j == k - 1 {
            return not(mem(p, &chain[k - 2]));
        }
        if j == 0 {
            return mem(p, &chain[0]);
        }
        And(vec![mem(p, &chain[j]), not(mem(p, &chain[j - 1]))])
    }

    fn colouring(&mut self, chain: &[String], left: &str, right: &str) -> Formula {
        let mut parts: Vec<Formula> = chain.windows(2).map(|w| self.subset(&w[0], &w[1])).collect();
        let last = chain.last().expect("at least two letters").clone();
        let neutral = self.forall_pos(|n, p| {
            let inside = n.in_interval(p, left, right);
            Formula::implies(Or(vec![not(inside), mem(p, left)]), not(mem(p, &last)))
        });
        parts.push(neutral);
        And(parts)
    }
}

/// The congruence-game sentence for a language over `alphabet` with the
/// given neutral letter, named `symbol` in its single language atom. The
/// input word is read through `letter(x) = a` atoms.
pub fn encode_congruence_game(alphabet: &Alphabet, neutral: char, symbol: &str) -> Result<Formula> {
    if !alphabet.contains(neutral) {
        return Err(Error::AlphabetMismatch { letter: neutral, alphabet: alphabet.to_string() });
    }
    if alphabet.len() < 2 {
        return Err(Error::invalid("the alphabet needs a letter besides the neutral one"));
    }
    let k = alphabet.len();
    // Colour order: the other letters, then the neutral letter.
    let colours: Vec<char> = alphabet.letters().iter().copied().filter(|&c| c != neutral).chain([neutral]).collect();
    let mut n = Names { next: 0 };
    let set_names = |stem: &str| -> Vec<String> { (1..=k).map(|j| format!("{stem}{j}")).collect() };
    let (w_chain, v_chain) = (set_names("C")[..k - 1].to_vec(), set_names("D")[..k - 1].to_vec());
    let z = set_names("Z");

    // Round 6.
    let empty_t = not(n.exists_in("T", |_, _| Formula::True));
    let p = n.fresh("p");
    let sel_w = n.exists_in("I", |n, x| {
        let open = n.open_from(x, &p, "Wr");
        And(vec![le(x, &p), open])
    });
    let in_v = n.in_interval(&p, "Vl", "Vr");
    let sel_v_from = n.exists_in("I", |n, x| {
        let x = x.to_string();
        let no_w = not(n.exists_in("Wl", |_, y| And(vec![Formula::less(&x, y), Formula::less(y, &p)])));
        And(vec![Formula::less(&x, &p), no_w])
    });
    let selected = Or(vec![
        And(vec![empty_t.clone(), sel_w]),
        And(vec![not(empty_t.clone()), And(vec![in_v, sel_v_from])]),
    ]);
    let mut coded = Vec::new();
    for (j, &c) in colours.iter().enumerate() {
        let on_w = n.colour(&p, &w_chain, j);
        let on_v = n.colour(&p, &v_chain, j);
        let col = Or(vec![And(vec![empty_t.clone(), on_w]), And(vec![not(empty_t.clone()), on_v])]);
        let zj = &z[alphabet.index_of(c).expect("letter of the alphabet")];
        let rhs = if j == k - 1 { Or(vec![not(selected.clone()), col]) } else { And(vec![selected.clone(), col]) };
        coded.push(Formula::iff(mem(&p, zj), rhs));
    }
    let code = Formula::forall1(&p, And(coded));
    let bit = n.exists_in("B", |_, _| Formula::True);
    let atom = Formula::Lang { symbol: symbol.into(), args: z.clone() };
    let mut round6 = Formula::implies(code, Formula::iff(atom, bit));
    for zj in z.iter().rev() {
        round6 = Formula::forall2(zj, round6);
    }
    let round6 = Formula::exists2("B", Formula::forall2("T", round6));

    // Round 5.
    let sub = n.subset("I", "Wl");
    let inf = n.infinite("I");
    let round5 = Formula::forall2("I", Formula::implies(And(vec![sub, inf]), round6));

    // Round 4.
    let mut round4 = And(vec![n.colouring(&v_chain, "Vl", "Vr"), round5]);
    for d in v_chain.iter().rev() {
        round4 = Formula::exists2(d, round4);
    }

    // Round 3.
    let mut round3 = Formula::implies(n.colouring(&w_chain, "Wl", "Wr"), round4);
    for c in w_chain.iter().rev() {
        round3 = Formula::forall2(c, round3);
    }

    // Round 2.
    let sub = n.subfamily("Wl", "Wr", "Fl", "Fr");
    let v_family = n.family("Vl", "Vr");
    let all_a = n.forall_pos(|n, p| {
        let inside = n.in_interval(p, "Vl", "Vr");
        Formula::implies(inside, Formula::letter(p, 'a'))
    });
    let wv = n.interleaved("Wl", "Vl");
    let vw = n.interleaved("Vl", "Wl");
    let w_first = n.forall_pos(|n, r| {
        let r = r.to_string();
        let before = n.exists_in("Wl", |_, q| Formula::less(q, &r));
        Formula::implies(mem(&r, "Vl"), before)
    });
    let apart = n.forall_pos(|n, p| {
        let in_w = n.in_interval(p, "Wl", "Wr");
        let in_v = n.in_interval(p, "Vl", "Vr");
        not(And(vec![in_w, in_v]))
    });
    let mut round2 = And(vec![sub, v_family, all_a, wv, vw, w_first, apart, round3]);
    for s in ["Vr", "Vl", "Wr", "Wl"] {
        round2 = Formula::exists2(s, round2);
    }

    // Round 1.
    let family = n.family("Fl", "Fr");
    Ok(Formula::forall2("Fl", Formula::forall2("Fr", Formula::implies(family, round2))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(k: usize) -> Alphabet {
        Alphabet::from_letters("1abcdefgh".chars().take(k)).unwrap()
    }

    #[test]
    fn closed_with_one_atom() {
        let f = encode_congruence_game(&sigma(3), '1', "L").unwrap();
        assert!(f.free_vars().unwrap().is_empty());
        assert_eq!(f.count_lang_atoms(), 1);
        assert!(f.check_well_scoped(&|s| (s == "L").then_some(3)).is_ok());
        let back: Formula = f.to_string().parse().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn size_is_affine_in_alphabet() {
        let sizes: Vec<i64> = (2..=6).map(|k| encode_congruence_game(&sigma(k), '1', "L").unwrap().size() as i64).collect();
        let step = sizes[1] - sizes[0];
        assert!(step > 0);
        assert!(sizes.windows(2).all(|w| w[1] - w[0] == step), "{sizes:?}");
    }

    #[test]
    fn rejects_missing_neutral() {
        assert!(encode_congruence_game(&sigma(3), 'z', "L").is_err());
        assert!(encode_congruence_game(&sigma(1), '1', "L").is_err());
    }
}
