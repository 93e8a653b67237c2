/// Returned when nothing but corpus examples remains of a gloss.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptyGloss;

/// Reduce a raw WNDB gloss to its definition part.
///
/// The gloss is split into `;`-separated segments (semicolons inside double
/// quotes do not split), segments opening with a double quote are dropped as
/// corpus examples, and the rest is rejoined with `"; "`.
pub fn clean_gloss(raw: &str) -> Result<String, EmptyGloss> {
    let kept: Vec<&str> = segments(raw)
        .into_iter()
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('"'))
        .collect();
    if kept.is_empty() {
        return Err(EmptyGloss);
    }
    Ok(kept.join("; "))
}

fn segments(raw: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut in_quote = false;
    let mut start = 0;
    for (i, c) in raw.char_indices() {
        match c {
            '"' => in_quote = !in_quote,
            ';' if !in_quote => {
                out.push(&raw[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&raw[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn strips_quoted_example() {
        assert_eq!(
            clean_gloss("a small rodent; \"the rat ate the cheese\"").unwrap(),
            "a small rodent"
        );
    }

    #[test]
    fn keeps_plain_segments() {
        assert_eq!(clean_gloss("kill; cause to die").unwrap(), "kill; cause to die");
    }

    #[test]
    fn only_example_is_empty() {
        assert_eq!(clean_gloss("  \"only an example\"  "), Err(EmptyGloss));
        assert_eq!(clean_gloss("   "), Err(EmptyGloss));
    }

    #[test]
    fn semicolon_inside_example_does_not_split() {
        let raw = "move fast; \"he ran; she walked\"; \"they left\"  ";
        assert_eq!(clean_gloss(raw).unwrap(), "move fast");
    }

    #[test]
    fn trailing_whitespace_from_wndb_is_trimmed() {
        assert_eq!(clean_gloss("a living thing  \n").unwrap(), "a living thing");
    }

    proptest! {
        #[test]
        fn idempotent(raw in "[a-z \";]{0,40}") {
            if let Ok(once) = clean_gloss(&raw) {
                prop_assert_eq!(clean_gloss(&once), Ok(once.clone()));
                for seg in segments(&once) {
                    prop_assert!(!seg.trim_start().starts_with('"'));
                }
            }
        }
    }
}
