#include "subtess/alphabet.hpp"

namespace subtess {

Alphabet::Alphabet(std::vector<std::string> labels) {
    if (labels.empty()) throw Error("alphabet must be nonempty");
    auto d = std::make_shared<Data>();
    d->labels = std::move(labels);
    for (Sym s = 0; s < d->labels.size(); ++s) {
        auto [it, fresh] = d->index.emplace(d->labels[s], s);
        if (!fresh) throw Error("duplicate alphabet label: " + d->labels[s]);
    }
    data_ = std::move(d);
}

Alphabet Alphabet::letters(std::string_view chars) {
    std::vector<std::string> ls;
    ls.reserve(chars.size());
    for (char c : chars) ls.emplace_back(1, c);
    return Alphabet(std::move(ls));
}

std::optional<Sym> Alphabet::find(std::string_view label) const {
    auto it = data_->index.find(label);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
}

Sym Alphabet::require(std::string_view label) const {
    auto s = find(label);
    if (!s) throw Error("symbol not in alphabet: " + std::string(label));
    return *s;
}

Alphabet Alphabet::tagged(std::string_view suffix) const {
    std::vector<std::string> ls;
    ls.reserve(size());
    for (const auto& l : data_->labels) ls.push_back(l + std::string(suffix));
    return Alphabet(std::move(ls));
}

bool Alphabet::operator==(const Alphabet& o) const {
    return data_ == o.data_ || data_->labels == o.data_->labels;
}

std::string word_to_string(const Alphabet& a, const Word& w) {
    std::string out;
    for (Sym s : w) out += a.label(s);
    return out;
}

Word parse_word(const Alphabet& a, std::string_view text) {
    Word w;
    w.reserve(text.size());
    for (char c : text) w.push_back(a.require(std::string_view(&c, 1)));
    return w;
}

}  // namespace subtess
