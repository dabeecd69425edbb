//! Sentence splitting and word tokenization for English text.

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// Characters detached from the edges of a whitespace-delimited word.
pub fn is_edge_punct(c: char) -> bool {
    matches!(
        c,
        '.' | ',' | '!' | '?' | ';' | ':' | '"' | '\'' | '(' | ')'
    )
}

/// Splits text after each maximal run of `.`, `!` or `?` that is followed by
/// whitespace or the end of the text. Delimiters stay with their sentence.
pub fn split_sentences(text: &str) -> Vec<String> {
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if !is_terminal(c) {
            continue;
        }
        let mut end = i + c.len_utf8();
        while let Some(&(j, d)) = chars.peek() {
            if !is_terminal(d) {
                break;
            }
            end = j + d.len_utf8();
            chars.next();
        }
        let boundary = match chars.peek() {
            None => true,
            Some(&(_, d)) => d.is_whitespace(),
        };
        if boundary {
            push_trimmed(&mut sentences, &text[start..end]);
            start = end;
        }
    }
    push_trimmed(&mut sentences, &text[start..]);
    sentences
}

fn push_trimmed(out: &mut Vec<String>, piece: &str) {
    let piece = piece.trim();
    if !piece.is_empty() {
        out.push(piece.to_string());
    }
}

/// Whitespace tokenization with edge punctuation detached. A run of one
/// repeated punctuation character ("???", "...") becomes a single token.
pub fn tokenize(sentence: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for word in sentence.split_whitespace() {
        let chars: Vec<char> = word.chars().collect();
        let mut lo = 0;
        while lo < chars.len() && is_edge_punct(chars[lo]) {
            lo += 1;
        }
        let mut hi = chars.len();
        while hi > lo && is_edge_punct(chars[hi - 1]) {
            hi -= 1;
        }
        push_runs(&mut tokens, &chars[..lo]);
        if hi > lo {
            tokens.push(chars[lo..hi].iter().collect());
        }
        push_runs(&mut tokens, &chars[hi..]);
    }
    tokens
}

fn push_runs(out: &mut Vec<String>, chars: &[char]) {
    let mut i = 0;
    while i < chars.len() {
        let mut j = i + 1;
        while j < chars.len() && chars[j] == chars[i] {
            j += 1;
        }
        out.push(chars[i..j].iter().collect());
        i = j;
    }
}
