#include "hardy/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hardy {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InputError("field '" + field + "': " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  }
}

double nonnegative(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x) || x < 0.0) fail(path, "expected a finite nonnegative number, got " + j.dump());
  return x;
}

double exponent(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    fail(path, "expected a positive number or \"inf\", got " + j.dump());
  }
  if (!j.is_number()) fail(path, "expected a positive number or \"inf\"");
  const double x = j.get<double>();
  if (!std::isfinite(x) || !(x > 0.0)) fail(path, "expected a positive number or \"inf\", got " + j.dump());
  return x;
}

std::vector<double> array_of(const json& j, std::size_t length, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  if (j.size() != length)
    fail(path, "length " + std::to_string(j.size()) + " does not match window length " + std::to_string(length));
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(nonnegative(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

KernelSpec parse_kernel(const json& j, const Window& win, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const json& type = member(j, "type", path);
  if (!type.is_string()) fail(path + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "constant") {
    only_keys(j, {"type", "c"}, path);
    return KernelSpec{ConstantKernel{nonnegative(member(j, "c", path), path + ".c")}};
  }
  if (t == "tabulated") {
    only_keys(j, {"type", "rows"}, path);
    const json& rows = member(j, "rows", path);
    if (!rows.is_array()) fail(path + ".rows", "expected an array");
    if (rows.size() != win.length)
      fail(path + ".rows", "has " + std::to_string(rows.size()) + " rows, window length is " +
                               std::to_string(win.length));
    TabulatedKernel k{win.start, {}};
    for (std::size_t i = 0; i < rows.size(); ++i)
      k.rows.push_back(array_of(rows[i], win.length - i, path + ".rows[" + std::to_string(i) + "]"));
    return KernelSpec{std::move(k)};
  }
  if (t == "sup" || t == "row") {
    only_keys(j, {"type", "u"}, path);
    WeightSeq u(win.start, array_of(member(j, "u", path), win.length, path + ".u"));
    if (t == "sup") return KernelSpec{SupOfSequenceKernel{std::move(u)}};
    return KernelSpec{RowSequenceKernel{std::move(u)}};
  }
  if (t == "power") {
    only_keys(j, {"type", "base", "r"}, path);
    const double r = nonnegative(member(j, "r", path), path + ".r");
    if (!(r > 0.0)) fail(path + ".r", "expected a positive number");
    auto base = std::make_shared<const KernelSpec>(parse_kernel(member(j, "base", path), win, path + ".base"));
    return KernelSpec{PowerKernel{std::move(base), r}};
  }
  fail(path + ".type", "unknown kernel type \"" + t + "\" (constant, tabulated, sup, row, power)");
}

json number(double x) {
  if (x == kInf) return "inf";
  return x;
}

json values_on(const WeightSeq& s, const Window& win) {
  json a = json::array();
  for (Index n = win.first(); n <= win.last(); ++n) a.push_back(s[n]);
  return a;
}

json kernel_json(const KernelSpec& spec, const Window& win) {
  return std::visit(
      [&](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        json j;
        if constexpr (std::is_same_v<K, ConstantKernel>) {
          j["type"] = "constant";
          j["c"] = k.c;
        } else if constexpr (std::is_same_v<K, TabulatedKernel>) {
          j["type"] = "tabulated";
          j["rows"] = k.rows;
        } else if constexpr (std::is_same_v<K, SupOfSequenceKernel>) {
          j["type"] = "sup";
          j["u"] = values_on(k.u, win);
        } else if constexpr (std::is_same_v<K, RowSequenceKernel>) {
          j["type"] = "row";
          j["u"] = values_on(k.u, win);
        } else {
          j["type"] = "power";
          j["base"] = kernel_json(*k.base, win);
          j["r"] = k.r;
        }
        return j;
      },
      spec.node);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("malformed document: expected a JSON object");
  only_keys(doc, {"window", "p", "q", "v", "w", "kernel"}, "");

  const json& wj = member(doc, "window", "");
  if (!wj.is_object()) fail("window", "expected an object");
  only_keys(wj, {"start", "length"}, "window");
  const json& sj = member(wj, "start", "window");
  const json& lj = member(wj, "length", "window");
  if (!sj.is_number_integer()) fail("window.start", "expected an integer");
  if (!lj.is_number_integer() || lj.get<long long>() < 1) fail("window.length", "expected a positive integer");
  const Window win{sj.get<Index>(), lj.get<std::size_t>()};

  const double p = exponent(member(doc, "p", ""), "p");
  const double q = exponent(member(doc, "q", ""), "q");
  WeightSeq v(win.start, array_of(member(doc, "v", ""), win.length, "v"));
  WeightSeq w(win.start, array_of(member(doc, "w", ""), win.length, "w"));
  KernelSpec k = parse_kernel(member(doc, "kernel", ""), win, "kernel");
  try {
    return Instance(ExponentPair(p, q), std::move(v), std::move(w), std::move(k));
  } catch (const std::exception& e) {
    throw InputError(std::string("invalid instance: ") + e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read instance file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string serialize(const Instance& I) {
  json doc;
  doc["window"] = {{"start", I.window.start}, {"length", I.window.length}};
  doc["p"] = number(I.p());
  doc["q"] = number(I.q());
  doc["v"] = values_on(I.v, I.window);
  doc["w"] = values_on(I.w, I.window);
  doc["kernel"] = kernel_json(I.kernel.spec(), I.window);
  return doc.dump(2) + "\n";
}

}  // namespace hardy
