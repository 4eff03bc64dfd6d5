use std::fmt::Write;

use super::{InstanceSet, ParseError, Tokens};
use crate::model::Instance;
use crate::weight::Weight;

/// Parses the OR-Library one-dimensional bin packing layout:
///
/// ```text
/// <problem count>
/// <identifier>
/// <capacity> <item count> <best known bin count>
/// <weight>
/// ...
/// ```
///
/// Line breaks are not significant; any whitespace separates tokens.
pub fn parse_orlib<W: Weight>(set_name: &str, text: &str) -> Result<InstanceSet<W>, ParseError> {
    let mut tokens = Tokens::new(text);
    let count: usize = tokens.next_parsed("problem count")?;
    let mut instances = Vec::with_capacity(count.min(1 << 16));
    for problem in 0..count {
        tokens.problem = problem;
        let name = tokens.next_raw("problem identifier")?;
        let capacity: W = tokens.capacity()?;
        let n: usize = tokens.next_parsed("item count")?;
        let best_known: usize = tokens.next_parsed("best known bin count")?;
        let weights = tokens.weights(n, capacity)?;
        let inst = Instance::new(name, capacity, weights)
            .expect("weights validated while parsing")
            .with_best_known(Some(best_known));
        instances.push(inst);
    }
    tokens.finish()?;
    InstanceSet::new(set_name, instances)
}

/// Writes `set` in the layout read by [`parse_orlib`]. Instances without a
/// best-known value are written with their item count as the reference.
pub fn write_orlib<W: Weight>(set: &InstanceSet<W>) -> String {
    let mut out = String::new();
    writeln!(out, " {}", set.instances().len()).unwrap();
    for inst in set.instances() {
        writeln!(out, " {}", inst.name()).unwrap();
        writeln!(
            out,
            " {} {} {}",
            inst.capacity(),
            inst.len(),
            inst.best_known().unwrap_or(inst.len())
        )
        .unwrap();
        for w in inst.weights() {
            writeln!(out, "{w}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line_layout() {
        let set: InstanceSet<u64> = parse_orlib("s", "1 t01 10 3 2 5 5 4").unwrap();
        let inst = &set.instances()[0];
        assert_eq!(inst.name(), "t01");
        assert_eq!(inst.capacity(), 10);
        assert_eq!(inst.weights(), &[5, 5, 4]);
        assert_eq!(inst.best_known(), Some(2));
    }

    #[test]
    fn weight_exceeding_capacity() {
        let err = parse_orlib::<u64>("s", "1 t01 10 3 2 5 5 11").unwrap_err();
        assert!(err.to_string().contains("weight exceeds capacity"), "{err}");
        assert!(matches!(
            err,
            ParseError::WeightExceedsCapacity {
                problem: 0,
                position: 8,
                ..
            }
        ));
    }

    #[test]
    fn truncated_and_garbage() {
        assert!(matches!(
            parse_orlib::<u64>("s", "2 a 10 2 1 5 5 b 10 2"),
            Err(ParseError::UnexpectedEnd { problem: 1, .. })
        ));
        assert!(matches!(
            parse_orlib::<u64>("s", "1 a 10 x 1"),
            Err(ParseError::NotAnInteger { position: 4, .. })
        ));
        assert!(matches!(
            parse_orlib::<u64>("s", "1 a 10 1 1 5 6"),
            Err(ParseError::TrailingTokens { position: 7, .. })
        ));
        assert_eq!(parse_orlib::<u64>("s", "0"), Err(ParseError::EmptySet));
        assert!(matches!(
            parse_orlib::<u64>("s", "2 a 10 1 1 5 a 10 1 1 5"),
            Err(ParseError::DuplicateName { problem: 1, .. })
        ));
        assert!(matches!(
            parse_orlib::<u64>("s", "1 a 0 0 0"),
            Err(ParseError::ZeroCapacity { .. })
        ));
    }

    #[test]
    fn orlib_header_wrapping() {
        // The shape of the published files: leading spaces, one token per line.
        let text = " 2\n u120_00\n 150 3 2\n42\n69\n67\n u120_01\n 150 2 1\n 20 30\n";
        let set: InstanceSet<u32> = parse_orlib("binpack1", text).unwrap();
        assert_eq!(set.instances().len(), 2);
        assert_eq!(set.instances()[0].weights(), &[42, 69, 67]);
        let again: InstanceSet<u32> = parse_orlib("binpack1", &write_orlib(&set)).unwrap();
        assert_eq!(again, set);
    }
}
