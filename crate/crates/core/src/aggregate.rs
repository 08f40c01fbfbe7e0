//! Folding ranked proposals into one phrase and splicing it into a caption.

use thiserror::Error;

use crate::proposals::{render_proposal, ComponentMode, PartProposal};
use crate::scalar::Scalar;
use crate::text::{Inflector, NounMention, TaggedToken};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InsertError {
    #[error("insertion token {index} out of range for {len} tokens")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("token span {start}..{end} does not fit caption of {len} bytes")]
    SpanOutOfRange { start: usize, end: usize, len: usize },
}

/// Joins items as `a`, `a and b`, `a, b and c` (or `a, b, and c`).
pub fn join_list(items: &[String], oxford_comma: bool) -> String {
    match items {
        [] => String::new(),
        [one] => one.clone(),
        [a, b] => format!("{a} and {b}"),
        [init @ .., last] => {
            let sep = if oxford_comma { ", and " } else { " and " };
            format!("{}{sep}{last}", init.join(", "))
        }
    }
}

/// Top `n` proposals that render to something under `mode`.
pub fn select_top<T: Scalar>(ranked: &[PartProposal<T>], n: usize, mode: ComponentMode) -> Vec<&PartProposal<T>> {
    ranked
        .iter()
        .filter(|p| mode != ComponentMode::Descriptor || p.attribute.is_some())
        .take(n)
        .collect()
}

/// Renders already-selected proposals as one phrase. Proposals sharing a
/// part label are folded together: `white and pink petals`.
pub fn aggregate_selected<T: Scalar>(
    selected: &[&PartProposal<T>],
    mode: ComponentMode,
    inflector: &Inflector<'_>,
    oxford_comma: bool,
) -> String {
    let mut groups: Vec<Vec<&PartProposal<T>>> = Vec::new();
    for p in selected {
        let same_group = |g: &Vec<&PartProposal<T>>| {
            let q = g[0];
            q.part_label == p.part_label && (mode == ComponentMode::Part || q.attribute.is_some() == p.attribute.is_some())
        };
        match groups.iter_mut().find(|g| same_group(g)) {
            Some(g) => g.push(p),
            None => groups.push(vec![p]),
        }
    }
    let phrases: Vec<String> = groups
        .iter()
        .filter_map(|g| {
            if let [single] = g.as_slice() {
                return render_proposal(single, mode, inflector);
            }
            let attrs: Vec<String> = g.iter().filter_map(|p| p.attribute.clone()).collect();
            let label = inflector.pluralize(&g[0].part_label);
            Some(match mode {
                ComponentMode::Both => format!("{} {label}", join_list(&attrs, oxford_comma)),
                ComponentMode::Descriptor => join_list(&attrs, oxford_comma),
                ComponentMode::Part => label,
            })
        })
        .collect();
    join_list(&phrases, oxford_comma)
}

/// Top-`n` selection followed by [`aggregate_selected`].
pub fn aggregate<T: Scalar>(
    ranked: &[PartProposal<T>],
    n: usize,
    mode: ComponentMode,
    inflector: &Inflector<'_>,
    oxford_comma: bool,
) -> String {
    aggregate_selected(&select_top(ranked, n, mode), mode, inflector, oxford_comma)
}

/// Connective placed before new proposals, given the object's description.
pub fn connective_for(description: &[TaggedToken]) -> &'static str {
    let has_with = description.iter().any(|t| t.lower == "with");
    let has_in_addition = description
        .windows(3)
        .any(|w| w[0].lower == "in" && w[1].lower == "addition" && w[2].lower == "to");
    match (has_with, has_in_addition) {
        (false, _) => " with ",
        (true, false) => " in addition to ",
        (true, true) => ", and ",
    }
}

/// Byte offset and text of one pending splice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splice {
    pub offset: usize,
    pub text: String,
}

/// Plans the splice of `aggregated` after the mention's insertion token.
/// Returns `Ok(None)` for an empty aggregate.
pub fn plan_insertion(
    caption: &str,
    tokens: &[TaggedToken],
    mention: &NounMention,
    aggregated: &str,
) -> Result<Option<Splice>, InsertError> {
    let index = mention.insertion_token_index;
    let token = tokens.get(index).ok_or(InsertError::IndexOutOfRange { index, len: tokens.len() })?;
    if token.span.end > caption.len() || !caption.is_char_boundary(token.span.end) {
        return Err(InsertError::SpanOutOfRange { start: token.span.start, end: token.span.end, len: caption.len() });
    }
    if aggregated.trim().is_empty() {
        return Ok(None);
    }
    let from = mention.head_token_index.min(index);
    let connective = connective_for(&tokens[from..=index]);
    Ok(Some(Splice { offset: token.span.end, text: format!("{connective}{}", aggregated.trim()) }))
}

/// Splices `aggregated` into `caption` after the mention's insertion token.
pub fn insert(caption: &str, tokens: &[TaggedToken], mention: &NounMention, aggregated: &str) -> Result<String, InsertError> {
    Ok(match plan_insertion(caption, tokens, mention, aggregated)? {
        Some(s) => apply_splices(caption, vec![s]),
        None => caption.to_string(),
    })
}

/// Applies splices from the highest offset down so earlier offsets stay valid.
pub fn apply_splices(caption: &str, mut splices: Vec<Splice>) -> String {
    splices.sort_by_key(|s| std::cmp::Reverse(s.offset));
    let mut out = caption.to_string();
    for s in splices {
        out.insert_str(s.offset, &s.text);
    }
    out
}
