#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace singable::data {

/// Splits a lyric line into word-like tokens for the compact line codec.
class Tokenizer {
public:
    virtual ~Tokenizer() = default;
    virtual std::vector<std::string> tokenize(std::string_view text) const = 0;
    /// True when tokens come from morphological analysis rather than spacing.
    virtual bool morphological() const noexcept = 0;
    virtual std::string_view name() const noexcept = 0;
};

class WhitespaceTokenizer final : public Tokenizer {
public:
    std::vector<std::string> tokenize(std::string_view text) const override;
    bool morphological() const noexcept override { return false; }
    std::string_view name() const noexcept override { return "whitespace"; }
};

/// Input already split by an external morphological analyzer (e.g. `mecab -Owakati`),
/// tokens separated by whitespace or '|'.
class PreSegmentedTokenizer final : public Tokenizer {
public:
    std::vector<std::string> tokenize(std::string_view text) const override;
    bool morphological() const noexcept override { return true; }
    std::string_view name() const noexcept override { return "pre-segmented"; }
};

/// Built-in Japanese segmenter: a kanji run absorbs the hiragana that follows it
/// (okurigana / particles), katakana and Latin runs stand alone, punctuation is
/// dropped. A rough stand-in for a full morphological analyzer.
class ScriptRunTokenizer final : public Tokenizer {
public:
    std::vector<std::string> tokenize(std::string_view text) const override;
    bool morphological() const noexcept override { return true; }
    std::string_view name() const noexcept override { return "script-run"; }
};

const Tokenizer& default_tokenizer() noexcept;

}  // namespace singable::data
