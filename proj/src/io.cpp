#include "kitelab/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "kitelab/errors.hpp"

namespace kitelab {

namespace {

struct Token
{
  std::string_view text;
  std::size_t column; // 1-based
};

std::vector<Token> tokenize(std::string_view line)
{
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#')
      break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r' && line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class Parser
{
public:
  explicit Parser(std::string_view text)
  {
    std::size_t start = 0, number = 1;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos)
        end = text.size();
      auto tokens = tokenize(text.substr(start, end - start));
      if (!tokens.empty())
        lines_.push_back({number, std::move(tokens)});
      start = end + 1;
      ++number;
    }
  }

  AlgebraFile run()
  {
    AlgebraFile out;
    std::optional<std::size_t> size;
    std::optional<Elem> zero;
    bool kind_seen = false, table_seen = false;
    std::set<std::string> seen;

    for (pos_ = 0; pos_ < lines_.size(); ++pos_) {
      auto const &[number, tokens] = lines_[pos_];
      auto key = std::string(tokens[0].text);
      std::string dedupe = key;
      if (key == "perm" && tokens.size() > 1)
        dedupe += " " + std::string(tokens[1].text);
      if (key == "gpea" || key == "pea")
        dedupe = "kind";
      if (!seen.insert(dedupe).second)
        fail(tokens[0], "duplicate '" + dedupe + "' line");

      if (key == "gpea" || key == "pea") {
        if (pos_ != 0)
          fail(tokens[0], "the kind must be the first line");
        expect_count(tokens, 1);
        out.kind = key == "pea" ? AlgebraFile::Kind::Pea
                                : AlgebraFile::Kind::Gpea;
        kind_seen = true;
      } else if (!kind_seen) {
        fail(tokens[0], "file must start with 'gpea' or 'pea'");
      } else if (key == "size") {
        expect_count(tokens, 2);
        size = number_at(tokens[1]);
        if (*size == 0)
          fail(tokens[1], "size must be positive");
      } else if (key == "zero") {
        expect_count(tokens, 2);
        zero = element_at(tokens[1], size);
      } else if (key == "top") {
        expect_count(tokens, 2);
        out.top = element_at(tokens[1], size);
      } else if (key == "labels") {
        need_size(tokens[0], size);
        expect_count(tokens, 1 + *size);
        for (std::size_t k = 1; k < tokens.size(); ++k)
          out.labels.emplace_back(tokens[k].text);
      } else if (key == "table") {
        need_size(tokens[0], size);
        expect_count(tokens, 1);
        out.table = read_table(*size);
        table_seen = true;
      } else if (key == "perm") {
        if (tokens.size() < 2 ||
            (tokens[1].text != "lambda" && tokens[1].text != "rho"))
          fail(tokens[0], "expected 'perm lambda' or 'perm rho'");
        std::vector<std::uint32_t> image;
        for (std::size_t k = 2; k < tokens.size(); ++k)
          image.push_back(static_cast<std::uint32_t>(number_at(tokens[k])));
        try {
          Permutation p(image);
          (tokens[1].text == "lambda" ? out.lambda : out.rho) = p;
        } catch (StructuralError const &e) {
          fail(tokens[1], e.what());
        }
      } else {
        fail(tokens[0], "unknown keyword '" + key + "'");
      }
    }

    std::size_t last = lines_.empty() ? 1 : lines_.back().first;
    if (!kind_seen)
      throw ParseError(last, 1, "missing 'gpea' or 'pea' line");
    if (!size)
      throw ParseError(last, 1, "missing 'size' line");
    if (!zero)
      throw ParseError(last, 1, "missing 'zero' line");
    if (!table_seen)
      throw ParseError(last, 1, "missing 'table' block");
    if (out.kind == AlgebraFile::Kind::Pea && !out.top)
      throw ParseError(last, 1, "a pea file needs a 'top' line");
    if (out.kind == AlgebraFile::Kind::Gpea && out.top)
      throw ParseError(last, 1, "a gpea file has no 'top' line");
    if (out.lambda.has_value() != out.rho.has_value())
      throw ParseError(last, 1, "give both 'perm lambda' and 'perm rho'");
    if (out.lambda && out.lambda->size() != out.rho->size())
      throw ParseError(last, 1, "lambda and rho have different sizes");
    out.zero = *zero;
    return out;
  }

private:
  [[noreturn]] void fail(Token const &t, std::string const &what) const
  {
    throw ParseError(lines_[pos_].first, t.column, what);
  }

  void expect_count(std::vector<Token> const &tokens, std::size_t count) const
  {
    if (tokens.size() < count)
      fail(tokens.back(), "expected " + std::to_string(count - 1) +
                            " values after '" + std::string(tokens[0].text) +
                            "'");
    if (tokens.size() > count)
      fail(tokens[count], "unexpected extra value");
  }

  void need_size(Token const &t, std::optional<std::size_t> size) const
  {
    if (!size)
      fail(t, "'size' must come before '" + std::string(t.text) + "'");
  }

  std::size_t number_at(Token const &t) const
  {
    std::size_t value = 0;
    auto [ptr, ec] =
      std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      fail(t, "expected a nonnegative integer, got '" + std::string(t.text) +
                "'");
    return value;
  }

  Elem element_at(Token const &t, std::optional<std::size_t> size) const
  {
    need_size(t, size);
    auto v = number_at(t);
    if (v >= *size)
      fail(t, "element " + std::to_string(v) + " outside the carrier");
    return static_cast<Elem>(v);
  }

  PartialTable read_table(std::size_t n)
  {
    PartialTable table(n);
    for (Elem a = 0; a < n; ++a) {
      if (pos_ + 1 >= lines_.size())
        throw ParseError(lines_[pos_].first + 1, 1,
                         "table ends after " + std::to_string(a) + " rows");
      ++pos_;
      auto const &tokens = lines_[pos_].second;
      if (tokens.size() != n)
        fail(tokens.size() > n ? tokens[n] : tokens.back(),
             "table row needs " + std::to_string(n) + " entries");
      for (Elem b = 0; b < n; ++b) {
        if (tokens[b].text == "-")
          continue;
        auto v = number_at(tokens[b]);
        if (v >= n)
          fail(tokens[b], "entry " + std::to_string(v) + " outside the carrier");
        table.set(a, b, static_cast<Elem>(v));
      }
    }
    return table;
  }

  std::vector<std::pair<std::size_t, std::vector<Token>>> lines_;
  std::size_t pos_ = 0;
};

void emit_perm(std::ostream &out, char const *name, Permutation const &p)
{
  out << "perm " << name;
  for (auto v : p.image())
    out << ' ' << v;
  out << '\n';
}

} // namespace

AlgebraFile parse_algebra_file(std::string_view text)
{
  return Parser(text).run();
}

AlgebraFile read_algebra_file(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_algebra_file(buffer.str());
}

LoadedAlgebra validate(AlgebraFile file)
{
  Gpea gpea = Gpea::make(file.table, file.zero, file.labels);
  std::optional<Pea> pea;
  if (file.kind == AlgebraFile::Kind::Pea)
    pea = Pea::make(gpea, *file.top);
  return LoadedAlgebra{std::move(file), std::move(gpea), std::move(pea)};
}

Gpea parse_gpea(std::string_view text)
{
  auto file = parse_algebra_file(text);
  if (file.kind != AlgebraFile::Kind::Gpea)
    throw UsageError("expected a gpea file");
  return validate(std::move(file)).gpea;
}

Pea parse_pea(std::string_view text)
{
  auto file = parse_algebra_file(text);
  if (file.kind != AlgebraFile::Kind::Pea)
    throw UsageError("expected a pea file");
  return *validate(std::move(file)).pea;
}

std::string emit_algebra(AlgebraFile const &file)
{
  std::ostringstream out;
  std::size_t const n = file.table.size();
  out << (file.kind == AlgebraFile::Kind::Pea ? "pea" : "gpea") << '\n';
  out << "size " << n << '\n';
  out << "zero " << file.zero << '\n';
  if (file.top)
    out << "top " << *file.top << '\n';
  if (!file.labels.empty()) {
    out << "labels";
    for (auto const &l : file.labels)
      out << ' ' << l;
    out << '\n';
  }
  out << "table\n";
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (b)
        out << ' ';
      if (auto v = file.table.at(a, b))
        out << *v;
      else
        out << '-';
    }
    out << '\n';
  }
  if (file.lambda)
    emit_perm(out, "lambda", *file.lambda);
  if (file.rho)
    emit_perm(out, "rho", *file.rho);
  return out.str();
}

std::string emit_algebra(Gpea const &gpea)
{
  AlgebraFile file;
  file.table = gpea.table();
  file.zero = gpea.zero();
  file.labels = gpea.labels();
  return emit_algebra(file);
}

std::string emit_algebra(Pea const &pea)
{
  AlgebraFile file;
  file.kind = AlgebraFile::Kind::Pea;
  file.table = pea.gpea().table();
  file.zero = pea.zero();
  file.top = pea.top();
  file.labels = pea.gpea().labels();
  return emit_algebra(file);
}

} // namespace kitelab
