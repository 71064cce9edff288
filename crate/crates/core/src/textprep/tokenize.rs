use crate::Sentence;

/// Characters split off the edges of a whitespace-delimited chunk.
const DETACHABLE: [char; 9] = ['.', ',', '!', '?', ';', ':', '"', '(', ')'];

pub fn is_detachable(c: char) -> bool {
    DETACHABLE.contains(&c)
}

/// Splits on Unicode whitespace, then peels detachable punctuation off the
/// front and back of every chunk, one character per token. Punctuation inside
/// a chunk (`e.g`, `U.S`, `3,000`) stays attached.
pub fn tokenize(line: &str) -> Sentence {
    let mut out = Vec::new();
    for chunk in line.split_whitespace() {
        let start = chunk
            .char_indices()
            .find(|&(_, c)| !is_detachable(c))
            .map(|(i, _)| i);
        let Some(start) = start else {
            // all punctuation
            out.extend(chunk.chars().map(String::from));
            continue;
        };
        let end = chunk
            .char_indices()
            .rev()
            .find(|&(_, c)| !is_detachable(c))
            .map(|(i, c)| i + c.len_utf8())
            .unwrap_or(chunk.len());
        out.extend(chunk[..start].chars().map(String::from));
        out.push(chunk[start..end].to_owned());
        out.extend(chunk[end..].chars().map(String::from));
    }
    out
}
