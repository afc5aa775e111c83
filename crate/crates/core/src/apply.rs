//! Multivalued single-step application of a rule to an object.

use std::collections::HashSet;

use thiserror::Error;

use crate::object::{MultiSetObject, Word};
use crate::rule::{Rule, Schema};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApplyError {
    #[error("site {site:?} does not match rule {rule} on this object")]
    InvalidSite { rule: String, site: Site },
}

/// Where an application happens. Sites refer to distinct word values, not copies.
///
/// Offsets are byte offsets into `word` where the rule's leading anchor occurs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Site {
    /// GLUE: `left` is consumed as the prefix-side word, `right` as the suffix-side word.
    Pair { left: Word, right: Word },
    /// CLEAVE, SUB, INS: anchor occurrence at `offset`.
    At { word: Word, offset: usize },
    /// DEL, DUP: left anchor at `left_at`, right anchor at `right_at`.
    Span {
        word: Word,
        left_at: usize,
        right_at: usize,
    },
    /// SPLICE: anchor pair at `offset` in `word`, whole `donor` word inserted.
    Donor {
        word: Word,
        offset: usize,
        donor: Word,
    },
}

impl Site {
    /// The word values this site consumes (one copy each).
    pub fn consumed(&self) -> Vec<&Word> {
        match self {
            Site::Pair { left, right } => vec![left, right],
            Site::At { word, .. } | Site::Span { word, .. } => vec![word],
            Site::Donor { word, donor, .. } => vec![word, donor],
        }
    }
}

/// Every distinct single-step result of `rule` on `object`, with the lowest site producing it.
///
/// No-op applications are left out. The list is ordered by site.
pub fn enumerate_applications(rule: &Rule, object: &MultiSetObject) -> Vec<(Site, MultiSetObject)> {
    let mut sites = candidate_sites(rule.schema(), object);
    sites.sort();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for site in sites {
        let result = rewrite(rule.schema(), object, &site).expect("candidate site is valid");
        if &result == object || !seen.insert(result.clone()) {
            continue;
        }
        out.push((site, result));
    }
    out
}

/// Apply `rule` at a specific `site`.
pub fn apply_at(
    rule: &Rule,
    object: &MultiSetObject,
    site: &Site,
) -> Result<MultiSetObject, ApplyError> {
    rewrite(rule.schema(), object, site).ok_or_else(|| ApplyError::InvalidSite {
        rule: rule.name().to_string(),
        site: site.clone(),
    })
}

fn concat(parts: &[&[u8]]) -> Word {
    Word::from_valid_bytes(parts.concat())
}

fn candidate_sites(schema: &Schema, object: &MultiSetObject) -> Vec<Site> {
    let mut sites = Vec::new();
    match schema {
        Schema::Glue { left, right } => {
            for a in object
                .words()
                .filter(|a| a.as_bytes().ends_with(left.as_bytes()))
            {
                for b in object
                    .words()
                    .filter(|b| b.as_bytes().starts_with(right.as_bytes()))
                {
                    if a != b || object.multiplicity(a) >= 2 {
                        sites.push(Site::Pair {
                            left: a.clone(),
                            right: b.clone(),
                        });
                    }
                }
            }
        }
        Schema::Cleave { left, right } | Schema::Ins { left, right, .. } => {
            let anchor = [left.as_bytes(), right.as_bytes()].concat();
            for word in object.words() {
                for offset in word.occurrences(&anchor) {
                    sites.push(Site::At {
                        word: word.clone(),
                        offset,
                    });
                }
            }
        }
        Schema::Sub { from, .. } => {
            for word in object.words() {
                for offset in word.occurrences(from.as_bytes()) {
                    sites.push(Site::At {
                        word: word.clone(),
                        offset,
                    });
                }
            }
        }
        Schema::Del { left, right } | Schema::Dup { left, right } => {
            for word in object.words() {
                let rights: Vec<usize> = word.occurrences(right.as_bytes()).collect();
                for left_at in word.occurrences(left.as_bytes()) {
                    let infix_start = left_at + left.len();
                    for &right_at in rights.iter().filter(|&&j| j > infix_start) {
                        sites.push(Site::Span {
                            word: word.clone(),
                            left_at,
                            right_at,
                        });
                    }
                }
            }
        }
        Schema::Splice { left, right } => {
            let anchor = [left.as_bytes(), right.as_bytes()].concat();
            for word in object.words() {
                for offset in word.occurrences(&anchor) {
                    for donor in object.words() {
                        if donor != word || object.multiplicity(word) >= 2 {
                            sites.push(Site::Donor {
                                word: word.clone(),
                                offset,
                                donor: donor.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    sites
}

/// Checks that `site` is valid for `schema` on `object` and computes the result.
fn rewrite(schema: &Schema, object: &MultiSetObject, site: &Site) -> Option<MultiSetObject> {
    let present = |w: &Word| object.multiplicity(w) > 0;
    match (schema, site) {
        (Schema::Glue { left, right }, Site::Pair { left: a, right: b }) => {
            if !a.as_bytes().ends_with(left.as_bytes())
                || !b.as_bytes().starts_with(right.as_bytes())
            {
                return None;
            }
            object.replace(&[a, b], vec![concat(&[a.as_bytes(), b.as_bytes()])])
        }
        (Schema::Cleave { left, right }, Site::At { word, offset }) => {
            let bytes = word.as_bytes();
            let cut = anchored_pair(bytes, *offset, left, right)?;
            object.replace(
                &[word],
                vec![concat(&[&bytes[..cut]]), concat(&[&bytes[cut..]])],
            )
        }
        (Schema::Sub { from, to }, Site::At { word, offset }) => {
            let bytes = word.as_bytes();
            if !present(word) || !bytes.get(*offset..)?.starts_with(from.as_bytes()) {
                return None;
            }
            let end = offset + from.len();
            object.replace(
                &[word],
                vec![concat(&[&bytes[..*offset], to.as_bytes(), &bytes[end..]])],
            )
        }
        (
            Schema::Ins {
                left,
                insert,
                right,
            },
            Site::At { word, offset },
        ) => {
            let bytes = word.as_bytes();
            let cut = anchored_pair(bytes, *offset, left, right)?;
            object.replace(
                &[word],
                vec![concat(&[&bytes[..cut], insert.as_bytes(), &bytes[cut..]])],
            )
        }
        (
            Schema::Del { left, right },
            Site::Span {
                word,
                left_at,
                right_at,
            },
        ) => {
            let bytes = word.as_bytes();
            let infix_start = span_infix(bytes, *left_at, *right_at, left, right)?;
            object.replace(
                &[word],
                vec![concat(&[&bytes[..infix_start], &bytes[*right_at..]])],
            )
        }
        (
            Schema::Dup { left, right },
            Site::Span {
                word,
                left_at,
                right_at,
            },
        ) => {
            let bytes = word.as_bytes();
            let infix_start = span_infix(bytes, *left_at, *right_at, left, right)?;
            let infix = &bytes[infix_start..*right_at];
            object.replace(
                &[word],
                vec![concat(&[&bytes[..*right_at], infix, &bytes[*right_at..]])],
            )
        }
        (
            Schema::Splice { left, right },
            Site::Donor {
                word,
                offset,
                donor,
            },
        ) => {
            let bytes = word.as_bytes();
            let cut = anchored_pair(bytes, *offset, left, right)?;
            object.replace(
                &[word, donor],
                vec![concat(&[&bytes[..cut], donor.as_bytes(), &bytes[cut..]])],
            )
        }
        _ => None,
    }
}

/// If `left·right` occurs at `offset`, the cut position between the anchors.
fn anchored_pair(bytes: &[u8], offset: usize, left: &Word, right: &Word) -> Option<usize> {
    let rest = bytes.get(offset..)?;
    let cut = offset + left.len();
    (rest.starts_with(left.as_bytes()) && bytes.get(cut..)?.starts_with(right.as_bytes()))
        .then_some(cut)
}

/// Start of the nonempty infix between `left` at `left_at` and `right` at `right_at`.
fn span_infix(
    bytes: &[u8],
    left_at: usize,
    right_at: usize,
    left: &Word,
    right: &Word,
) -> Option<usize> {
    let infix_start = left_at + left.len();
    let ok = right_at > infix_start
        && bytes.get(left_at..)?.starts_with(left.as_bytes())
        && bytes.get(right_at..)?.starts_with(right.as_bytes());
    ok.then_some(infix_start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn obj(pairs: &[(&str, u64)]) -> MultiSetObject {
        MultiSetObject::from_pairs(pairs.iter().copied())
    }

    fn w(s: &str) -> Word {
        Word::new(s).unwrap()
    }

    fn results(rule: &Rule, o: &MultiSetObject) -> Vec<MultiSetObject> {
        enumerate_applications(rule, o)
            .into_iter()
            .map(|(_, r)| r)
            .collect()
    }

    #[test]
    fn cleave_splits_between_anchors() {
        let r = Rule::cleave("c", "a", "b", 1.0).unwrap();
        assert_eq!(
            results(&r, &obj(&[("ab", 1)])),
            vec![obj(&[("a", 1), ("b", 1)])]
        );
    }

    #[test]
    fn sub_each_occurrence() {
        let r = Rule::sub("s", "a", "c", 1.0).unwrap();
        assert_eq!(
            results(&r, &obj(&[("aa", 1)])),
            vec![obj(&[("ca", 1)]), obj(&[("ac", 1)])]
        );
    }

    #[test]
    fn glue_same_word_needs_two_copies() {
        let r = Rule::glue("g", "a", "a", 1.0).unwrap();
        assert_eq!(results(&r, &obj(&[("a", 2)])), vec![obj(&[("aa", 1)])]);
        assert!(results(&r, &obj(&[("a", 1)])).is_empty());
    }

    #[test]
    fn dup_doubles_infix() {
        let r = Rule::dup("d", "[", "]", 1.0).unwrap();
        assert_eq!(results(&r, &obj(&[("[x]", 1)])), vec![obj(&[("[xx]", 1)])]);
    }

    #[test]
    fn del_requires_nonempty_infix() {
        let r = Rule::del("d", "a", "b", 1.0).unwrap();
        assert!(results(&r, &obj(&[("ab", 1)])).is_empty());
        assert_eq!(results(&r, &obj(&[("axyb", 1)])), vec![obj(&[("ab", 1)])]);
        // Two left anchors, one right anchor: two distinct deletions.
        assert_eq!(
            results(&r, &obj(&[("axayb", 1)])),
            vec![obj(&[("ab", 1)]), obj(&[("axab", 1)])]
        );
    }

    #[test]
    fn ins_with_empty_anchors_matches_everywhere() {
        let r = Rule::ins("i", "", "x", "", 1.0).unwrap();
        assert_eq!(
            results(&r, &obj(&[("ab", 1)])),
            vec![obj(&[("xab", 1)]), obj(&[("axb", 1)]), obj(&[("abx", 1)])]
        );
        // Three insertion points in "aa", one distinct result.
        let r = Rule::ins("i", "", "a", "", 1.0).unwrap();
        assert_eq!(results(&r, &obj(&[("aa", 1)])), vec![obj(&[("aaa", 1)])]);
    }

    #[test]
    fn splice_consumes_donor() {
        let r = Rule::splice("p", "a", "b", 1.0).unwrap();
        let o = obj(&[("zaby", 1), ("w", 1)]);
        let site = Site::Donor {
            word: w("zaby"),
            offset: 1,
            donor: w("w"),
        };
        assert_eq!(apply_at(&r, &o, &site).unwrap(), obj(&[("zawby", 1)]));
        // Exhaustive by hand: the only other donor is "zaby" itself, which needs a second copy.
        assert_eq!(results(&r, &o), vec![obj(&[("zawby", 1)])]);
        let o2 = obj(&[("ab", 2)]);
        assert_eq!(results(&r, &o2), vec![obj(&[("aabb", 1)])]);
    }

    #[test]
    fn sub_to_empty_removes_word() {
        let r = Rule::sub("s", "a", "", 1.0).unwrap();
        assert_eq!(
            results(&r, &obj(&[("a", 1), ("b", 1)])),
            vec![obj(&[("b", 1)])]
        );
    }

    #[test]
    fn no_op_excluded() {
        let r = Rule::sub("s", "a", "a", 1.0).unwrap();
        assert!(results(&r, &obj(&[("aaa", 1)])).is_empty());
        let c = Rule::cleave("c", "", "ab", 1.0).unwrap();
        // Cutting before the first symbol leaves the object unchanged.
        assert!(results(&c, &obj(&[("ab", 1)])).is_empty());
    }

    #[test]
    fn sub_at_offset() {
        let r = Rule::sub("s", "a", "c", 1.0).unwrap();
        let site = Site::At {
            word: w("aa"),
            offset: 0,
        };
        assert_eq!(
            apply_at(&r, &obj(&[("aa", 1)]), &site).unwrap(),
            obj(&[("ca", 1)])
        );
    }

    #[test]
    fn glue_at_pair() {
        let r = Rule::glue("g", "x", "y", 1.0).unwrap();
        let site = Site::Pair {
            left: w("ax"),
            right: w("yb"),
        };
        let o = obj(&[("ax", 1), ("yb", 1)]);
        assert_eq!(apply_at(&r, &o, &site).unwrap(), obj(&[("axyb", 1)]));
    }

    #[test]
    fn invalid_sites_rejected() {
        let r = Rule::sub("s", "a", "c", 1.0).unwrap();
        let o = obj(&[("ba", 1)]);
        for site in [
            Site::At {
                word: w("ba"),
                offset: 0,
            },
            Site::At {
                word: w("ba"),
                offset: 7,
            },
            Site::At {
                word: w("zz"),
                offset: 0,
            },
            Site::Pair {
                left: w("ba"),
                right: w("ba"),
            },
        ] {
            assert!(matches!(
                apply_at(&r, &o, &site),
                Err(ApplyError::InvalidSite { .. })
            ));
        }
        let g = Rule::glue("g", "a", "b", 1.0).unwrap();
        let site = Site::Pair {
            left: w("ba"),
            right: w("ba"),
        };
        // Matches textually but would need two copies of "ba".
        assert!(apply_at(&g, &obj(&[("ba", 1)]), &site).is_err());
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        proptest::string::string_regex(&format!("[ab]{{0,{max}}}"))
            .unwrap()
            .prop_map(|s| Word::new(s).unwrap())
    }

    fn arb_object() -> impl Strategy<Value = MultiSetObject> {
        prop::collection::vec((arb_word(5), 1u64..3), 0..4).prop_map(crate::object::canonicalize)
    }

    fn arb_rule() -> impl Strategy<Value = Rule> {
        (0usize..7, arb_word(2), arb_word(2), arb_word(2)).prop_filter_map(
            "valid rule",
            |(k, p, q, r)| {
                let kind = crate::rule::RuleKind::ALL[k];
                let mut params = vec![p, q];
                if kind.arity() == 3 {
                    params.push(r);
                }
                Rule::from_parts("r", kind, params, 1.0).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn enumerate_agrees_with_apply_at(rule in arb_rule(), o in arb_object()) {
            let apps = enumerate_applications(&rule, &o);
            let mut seen = HashSet::new();
            for (site, result) in &apps {
                prop_assert_eq!(&apply_at(&rule, &o, site).unwrap(), result);
                prop_assert!(result != &o);
                prop_assert!(seen.insert(result.clone()));
                prop_assert!(result.iter().all(|(w, m)| !w.is_empty() && m > 0));
            }
            let sites: Vec<_> = apps.iter().map(|(s, _)| s.clone()).collect();
            let mut sorted = sites.clone();
            sorted.sort();
            prop_assert_eq!(sites, sorted);
            prop_assert_eq!(apps, enumerate_applications(&rule, &o));
        }

        #[test]
        fn equal_length_sub_conserves_symbols(o in arb_object(), from in "[ab]{1,2}", to in "[ab]{1,2}") {
            prop_assume!(from.len() == to.len());
            let rule = Rule::sub("s", &from, &to, 1.0).unwrap();
            for (_, result) in enumerate_applications(&rule, &o) {
                prop_assert_eq!(result.total_symbols(), o.total_symbols());
            }
        }

        #[test]
        fn cleave_then_glue_restores(prefix in "[xy]{0,3}", suffix in "[xy]{0,3}") {
            // Anchors "ab" and "c" never overlap themselves or the x/y filler.
            let word = format!("{prefix}abc{suffix}");
            let o = MultiSetObject::from_pairs([(word.as_str(), 1)]);
            let cleave = Rule::cleave("c", "ab", "c", 1.0).unwrap();
            let glue = Rule::glue("g", "ab", "c", 1.0).unwrap();
            let apps = enumerate_applications(&cleave, &o);
            prop_assert_eq!(apps.len(), 1);
            let fragments = &apps[0].1;
            let site = Site::Pair {
                left: Word::new(format!("{prefix}ab")).unwrap(),
                right: Word::new(format!("c{suffix}")).unwrap(),
            };
            prop_assert_eq!(apply_at(&glue, fragments, &site).unwrap(), o);
        }
    }
}
