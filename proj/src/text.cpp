#include "eqfree/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace eqfree {

namespace {

bool is_name_start(char c) { return c >= 'a' && c <= 'z'; }
bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

void validate_name(std::string_view name, std::size_t line, std::size_t col) {
  if (name.empty() || !is_name_start(name.front()))
    throw ParseError("generator name must start with a lowercase letter", line,
                     col);
  for (char c : name)
    if (!is_name_char(c))
      throw ParseError("invalid character in generator name", line, col);
}

Word parse_word_at(std::string_view text, const AlphabetPtr& alphabet,
                   std::size_t line) {
  std::string_view body = trim(text);
  if (body.empty() || body == "1") return Word(alphabet);

  std::vector<Letter> letters;
  if (compact_style(*alphabet)) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      char c = body[i];
      std::size_t col = i + 1;
      bool inv = false;
      if (c >= 'A' && c <= 'Z') {
        inv = true;
        c = static_cast<char>(c - 'A' + 'a');
      } else if (!(c >= 'a' && c <= 'z')) {
        throw ParseError("unexpected character '" + std::string(1, body[i]) +
                             "' in word",
                         line, col);
      }
      auto idx = alphabet->index(std::string_view(&c, 1));
      if (!idx)
        throw ParseError("unknown generator '" + std::string(1, c) + "'", line,
                         col);
      letters.push_back(Letter{static_cast<std::uint32_t>(*idx), inv});
    }
  } else {
    std::size_t i = 0;
    while (i < body.size()) {
      char c = body[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '.') {
        ++i;
        continue;
      }
      std::size_t col = i + 1;
      if (!is_name_start(c))
        throw ParseError("expected generator name", line, col);
      std::size_t j = i;
      while (j < body.size() && is_name_char(body[j])) ++j;
      std::string_view name = body.substr(i, j - i);
      auto idx = alphabet->index(name);
      if (!idx)
        throw ParseError("unknown generator '" + std::string(name) + "'", line,
                         col);
      long long exponent = 1;
      if (j < body.size() && body[j] == '^') {
        std::size_t k = j + 1;
        std::size_t e0 = k;
        if (k < body.size() && (body[k] == '-' || body[k] == '+')) ++k;
        while (k < body.size() && std::isdigit(static_cast<unsigned char>(body[k])))
          ++k;
        auto res = std::from_chars(body.data() + e0, body.data() + k, exponent);
        if (res.ec != std::errc() || res.ptr != body.data() + k || k == e0)
          throw ParseError("expected integer exponent after '^'", line, j + 2);
        j = k;
      }
      bool inv = exponent < 0;
      long long count = inv ? -exponent : exponent;
      for (long long r = 0; r < count; ++r)
        letters.push_back(Letter{static_cast<std::uint32_t>(*idx), inv});
      i = j;
    }
  }
  return Word::reduce(alphabet, std::move(letters));
}

struct Line {
  std::string text;
  std::size_t number;
};

std::vector<Line> split_lines(std::string_view content) {
  std::vector<Line> lines;
  std::size_t number = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= content.size(); ++i) {
    if (i == content.size() || content[i] == '\n') {
      std::string text(content.substr(start, i - start));
      auto hash = text.find('#');
      if (hash != std::string::npos) text.erase(hash);
      lines.push_back({text, number});
      start = i + 1;
      ++number;
    }
  }
  return lines;
}

std::vector<std::string> split_names(std::string_view s, std::size_t line) {
  std::vector<std::string> names;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    std::string_view name = s.substr(i, j - i);
    validate_name(name, line, i + 1);
    names.emplace_back(name);
    i = j;
  }
  return names;
}

// Letters mentioned by an image text, in order of first appearance; used to
// infer a codomain when no header declares one.
void collect_names(std::string_view body, std::vector<std::string>& out,
                   std::unordered_set<std::string>& seen, std::size_t line) {
  body = trim(body);
  if (body.empty() || body == "1") return;
  bool tokenish = body.find_first_of(" \t.^") != std::string_view::npos;
  if (tokenish) {
    std::size_t i = 0;
    while (i < body.size()) {
      char c = body[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '.') {
        ++i;
        continue;
      }
      if (c == '^') {
        ++i;
        while (i < body.size() &&
               (body[i] == '-' || body[i] == '+' ||
                std::isdigit(static_cast<unsigned char>(body[i]))))
          ++i;
        continue;
      }
      if (!is_name_start(c))
        throw ParseError("expected generator name", line, i + 1);
      std::size_t j = i;
      while (j < body.size() && is_name_char(body[j])) ++j;
      std::string name(body.substr(i, j - i));
      if (seen.insert(name).second) out.push_back(name);
      i = j;
    }
  } else {
    for (std::size_t i = 0; i < body.size(); ++i) {
      char c = body[i];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      if (!(c >= 'a' && c <= 'z'))
        throw ParseError("unexpected character '" + std::string(1, body[i]) +
                             "' in word",
                         line, i + 1);
      std::string name(1, c);
      if (seen.insert(name).second) out.push_back(name);
    }
  }
}

}  // namespace

bool compact_style(const Alphabet& alphabet) {
  for (const auto& s : alphabet.symbols())
    if (s.size() != 1 || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  return true;
}

AlphabetPtr parse_alphabet(std::string_view names) {
  return make_alphabet(split_names(names, 1));
}

Word parse_word(std::string_view text, const AlphabetPtr& alphabet) {
  return parse_word_at(text, alphabet, 1);
}

std::string print_word(const Word& w) {
  if (w.is_identity()) return "1";
  const Alphabet& a = *w.alphabet();
  std::string out;
  if (compact_style(a)) {
    for (Letter l : w.letters()) {
      char c = a.name(l.gen)[0];
      out.push_back(l.inv ? static_cast<char>(c - 'a' + 'A') : c);
    }
  } else {
    for (Letter l : w.letters()) {
      if (!out.empty()) out.push_back(' ');
      out += a.name(l.gen);
      if (l.inv) out += "^-1";
    }
  }
  return out;
}

Homomorphism parse_hom(std::string_view content) {
  std::vector<std::string> domain_names, codomain_names;
  bool have_domain = false, have_codomain = false;
  std::vector<std::pair<std::string, std::string>> assigns;  // name -> body
  std::vector<std::size_t> assign_lines;

  for (const Line& ln : split_lines(content)) {
    std::string_view body = trim(ln.text);
    if (body.empty()) continue;
    auto header = [&](std::string_view key) -> std::optional<std::string_view> {
      if (body.substr(0, key.size()) == key) return trim(body.substr(key.size()));
      return std::nullopt;
    };
    if (auto v = header("domain:")) {
      domain_names = split_names(*v, ln.number);
      have_domain = true;
      continue;
    }
    if (auto v = header("codomain:")) {
      codomain_names = split_names(*v, ln.number);
      have_codomain = true;
      continue;
    }
    if (auto v = header("alphabet:")) {
      domain_names = split_names(*v, ln.number);
      codomain_names = domain_names;
      have_domain = have_codomain = true;
      continue;
    }
    auto arrow = body.find("->");
    if (arrow == std::string_view::npos)
      throw ParseError("expected 'generator -> word'", ln.number, 1);
    std::string_view lhs = trim(body.substr(0, arrow));
    validate_name(lhs, ln.number, 1);
    assigns.emplace_back(std::string(lhs), std::string(trim(body.substr(arrow + 2))));
    assign_lines.push_back(ln.number);
  }

  if (assigns.empty()) throw ParseError("no generator assignments", 1, 1);

  if (!have_domain)
    for (const auto& [name, body] : assigns) {
      if (std::find(domain_names.begin(), domain_names.end(), name) ==
          domain_names.end())
        domain_names.push_back(name);
    }
  if (!have_codomain) {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < assigns.size(); ++i)
      collect_names(assigns[i].second, codomain_names, seen, assign_lines[i]);
  }

  AlphabetPtr domain = make_alphabet(domain_names);
  AlphabetPtr codomain = make_alphabet(codomain_names);

  std::vector<std::optional<Word>> images(domain->size());
  for (std::size_t i = 0; i < assigns.size(); ++i) {
    auto idx = domain->index(assigns[i].first);
    if (!idx)
      throw ParseError("'" + assigns[i].first + "' is not a domain generator",
                       assign_lines[i], 1);
    if (images[*idx])
      throw ParseError("generator '" + assigns[i].first + "' assigned twice",
                       assign_lines[i], 1);
    images[*idx] = parse_word_at(assigns[i].second, codomain, assign_lines[i]);
  }
  std::vector<Word> final_images;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i])
      throw ParseError("no image for generator '" + domain->name(i) + "'", 1, 1);
    final_images.push_back(*images[i]);
  }
  return Homomorphism(domain, codomain, std::move(final_images));
}

std::string print_hom(const Homomorphism& h) {
  std::ostringstream out;
  out << "domain:";
  for (const auto& s : h.domain()->symbols()) out << ' ' << s;
  out << "\ncodomain:";
  for (const auto& s : h.codomain()->symbols()) out << ' ' << s;
  out << '\n';
  for (std::size_t i = 0; i < h.domain()->size(); ++i)
    out << h.domain()->name(i) << " -> " << print_word(h.image(i)) << '\n';
  return out.str();
}

Homomorphism parse_hom_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_hom(buf.str());
}

}  // namespace eqfree
