#include "arrcert/freeness.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace arrcert {

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Free: return "FREE";
    case Verdict::NotFree: return "NOT-FREE";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

namespace {

json jint(const Int& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

json jints(const std::vector<Int>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(jint(x));
  return out;
}

json jsizes(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

std::vector<Int> sorted_multiset(std::vector<Int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Int> multiset_union(std::vector<Int> a, const std::vector<Int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return sorted_multiset(std::move(a));
}

// a minus b as multisets, or nullopt when b is not contained in a.
std::optional<std::vector<Int>> multiset_minus(std::vector<Int> a, std::vector<Int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Int> out;
  std::size_t i = 0;
  for (const auto& x : a) {
    if (i < b.size() && b[i] == x) {
      ++i;
      continue;
    }
    out.push_back(x);
  }
  if (i != b.size()) return std::nullopt;
  return out;
}

Int sum_of(const std::vector<Int>& v) {
  Int s = 0;
  for (const auto& x : v) s += x;
  return s;
}

Int pairwise_product_sum(const std::vector<Int>& v) {
  Int total = 0, prefix = 0;
  for (const auto& x : v) {
    total += prefix * x;
    prefix += x;
  }
  return total;
}

json flag_to_json(const std::vector<Flat>& flag) {
  json out = json::array();
  for (const auto& f : flag) {
    json ids = json::array();
    for (int i : f.contained.indices()) ids.push_back(i);
    out.push_back(ids);
  }
  return out;
}

std::vector<Flat> flag_from_json(const Arrangement& a, const json& flag) {
  std::vector<Flat> out;
  for (const auto& ids : flag) {
    std::vector<int> v;
    for (const auto& x : ids) v.push_back(x.get<int>());
    out.push_back(flat_of(a, v));
  }
  return out;
}

json make_node(const std::string& rule, const std::string& subject, json params, json data,
               Verdict verdict, const std::vector<Int>& exponents, json witness,
               json children) {
  json node;
  node["rule"] = rule;
  node["subject"] = subject;
  node["params"] = std::move(params);
  node["data"] = std::move(data);
  node["verdict"] = verdict_str(verdict);
  if (verdict == Verdict::Free) node["exponents"] = jints(exponents);
  if (verdict == Verdict::NotFree) node["witness"] = std::move(witness);
  node["children"] = std::move(children);
  return node;
}

Certificate make_cert(Verdict verdict, const Arrangement& subject, std::vector<Int> exponents,
                      json root) {
  Certificate c;
  c.verdict = verdict;
  c.subject = subject.key();
  c.exponents = sorted_multiset(std::move(exponents));
  c.root = std::move(root);
  return c;
}

std::vector<Int> chi_roots_or_throw(const Arrangement& a) {
  auto roots = integer_root_split(char_poly(a));
  if (!roots) throw std::logic_error("characteristic polynomial unexpectedly fails to split");
  return *roots;
}

template <typename F>
void parallel_for(int threads, std::size_t n, F&& f) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

// ---------------------------------------------------------------------------

struct FreenessEngine::Impl {
  explicit Impl(Options o) : options(o) {}

  Options options;

  mutable std::mutex mutex;
  std::map<std::string, Arrangement> interned;
  std::map<std::string, Certificate> memo_full;
  std::map<std::string, Certificate> memo_restricted;
  std::map<std::string, Verdict> facts;
  std::map<std::string, Int> b2_cache;
  struct DivInfo {
    std::vector<Int> exponents;       // ascending
    std::vector<int> chain;           // chosen hyperplane per level
    std::vector<std::size_t> sizes;   // restriction sizes along the chain
  };
  std::map<std::string, std::optional<DivInfo>> div_memo;
  std::vector<Certificate> records;

  const Arrangement& intern(const Arrangement& a) {
    std::scoped_lock lock(mutex);
    return interned.try_emplace(a.key(), a).first->second;
  }

  Int b2c(const Arrangement& a) {
    {
      std::scoped_lock lock(mutex);
      if (auto it = b2_cache.find(a.key()); it != b2_cache.end()) return it->second;
    }
    Int value = b2(a);
    std::scoped_lock lock(mutex);
    return b2_cache.try_emplace(a.key(), std::move(value)).first->second;
  }

  void record(const Certificate& cert, const Arrangement& subject) {
    if (cert.verdict == Verdict::Free) {
      if (static_cast<int>(cert.exponents.size()) != subject.dim())
        throw std::logic_error("FREE certificate with wrong exponent count for " + cert.subject);
      if (sum_of(cert.exponents) != Int(subject.size()))
        throw std::logic_error("FREE certificate exponents do not sum to |A| for " + cert.subject);
      if (pairwise_product_sum(cert.exponents) != b2c(subject))
        throw std::logic_error("FREE certificate violates the b2 identity for " + cert.subject);
      if (char_poly(subject) != IntPolynomial::from_roots(cert.exponents))
        throw std::logic_error("FREE certificate violates factorization for " + cert.subject);
    }
    std::scoped_lock lock(mutex);
    if (cert.verdict != Verdict::Undecided) {
      auto [it, inserted] = facts.emplace(cert.subject, cert.verdict);
      if (!inserted && it->second != cert.verdict)
        throw std::logic_error("contradictory verdicts recorded for " + cert.subject);
    }
    records.push_back(cert);
  }

  // -- orchestrator ---------------------------------------------------------

  Certificate certify_inner(const Arrangement& input, bool allow) {
    const Arrangement& a = intern(input);
    auto& memo = allow ? memo_full : memo_restricted;
    {
      std::scoped_lock lock(mutex);
      if (auto it = memo.find(a.key()); it != memo.end()) return it->second;
    }
    Certificate cert = run_priority(a, allow);
    record(cert, a);
    std::scoped_lock lock(mutex);
    return memo.try_emplace(a.key(), std::move(cert)).first->second;
  }

  Certificate run_priority(const Arrangement& a, bool allow) {
    if (auto c = filter(a)) return *c;
    if (a.rank() <= 2) return base_rank_le2(a);
    if (!a.essential()) {
      const Essentialization ess = essentialize(a);
      const Certificate inner = certify_inner(ess.arr, allow);
      return wrap_essential(a, ess, "certify", allow, inner);
    }
    if (a.rank() == 3) return rank3_core(a);
    if (auto c = supersolvable_core(a)) return *c;
    if (auto c = divisional_core(a)) return *c;
    for (std::size_t h = 0; h < a.size(); ++h)
      if (auto c = division(a, h)) return *c;
    for (std::size_t h = 0; h < a.size(); ++h)
      if (auto c = triple(a, h)) return c->first;
    if (allow)
      for (std::size_t h = 0; h < a.size(); ++h)
        if (auto c = adddel(a, h, TripleTarget::Full, false)) return *c;
    json data;
    data["rules_tried"] = {"thm-2.1-factorization", "rank-le-2",      "thm-2.4-rank3",
                           "def-4.1-supersolvable", "def-4.3-divisional", "thm-division",
                           "prop-2.7-triple",       "thm-1.1-addition-deletion"};
    json params;
    params["deletion_recursion"] = allow;
    return make_cert(Verdict::Undecided, a, {},
                     make_node("undecided", a.key(), std::move(params), std::move(data),
                               Verdict::Undecided, {}, {}, json::array()));
  }

  Certificate wrap_essential(const Arrangement& a, const Essentialization& ess,
                             const std::string& via, bool allow, const Certificate& inner) {
    std::vector<Int> exponents;
    if (inner.verdict == Verdict::Free) {
      exponents = inner.exponents;
      exponents.insert(exponents.end(), static_cast<std::size_t>(ess.zeros), Int(0));
      exponents = sorted_multiset(std::move(exponents));
    }
    json params;
    params["via"] = via;
    params["deletion_recursion"] = allow;
    json data;
    data["essential_key"] = ess.arr.key();
    data["zeros"] = ess.zeros;
    json witness;
    if (inner.verdict == Verdict::NotFree) witness = inner.root["witness"];
    json node = make_node("essentialize", a.key(), std::move(params), std::move(data),
                          inner.verdict, exponents, std::move(witness),
                          json::array({inner.root}));
    return make_cert(inner.verdict, a, std::move(exponents), std::move(node));
  }

  // -- simple rules ---------------------------------------------------------

  std::optional<Certificate> filter(const Arrangement& a) {
    const IntPolynomial chi = char_poly(a);
    const int tpower = a.dim() - a.rank();
    std::vector<Int> ess_coeffs(chi.coeffs().begin() + tpower, chi.coeffs().end());
    const IntPolynomial chi_ess(std::move(ess_coeffs));
    if (integer_root_split(chi_ess)) return std::nullopt;
    json witness;
    witness["kind"] = "IRREDUCIBLE-CHI";
    witness["essential_chi"] = jints(chi_ess.coeffs());
    json data;
    data["tpower"] = tpower;
    data["chi"] = jints(chi.coeffs());
    Certificate cert = make_cert(
        Verdict::NotFree, a, {},
        make_node("thm-2.1-factorization", a.key(), json::object(), std::move(data),
                  Verdict::NotFree, {}, std::move(witness), json::array()));
    record(cert, a);
    return cert;
  }

  Certificate base_rank_le2(const Arrangement& a) {
    const std::vector<Int> roots = chi_roots_or_throw(a);
    json data;
    data["chi"] = jints(char_poly(a).coeffs());
    data["rank"] = a.rank();
    return make_cert(Verdict::Free, a, roots,
                     make_node("rank-le-2", a.key(), json::object(), std::move(data),
                               Verdict::Free, roots, {}, json::array()));
  }

  Certificate rank3_core(const Arrangement& a) {
    const Int b2v = b2c(a);
    json checks = json::array();
    std::optional<bool> verdict;
    ExponentPair exp0{};
    Int gap0 = 0;
    for (std::size_t h = 0; h < a.size(); ++h) {
      const Multiarrangement z = ziegler_restriction(a, h);
      const Int mb = multi_b2(z);
      const bool eq = b2v == Int(a.size()) - 1 + mb;
      if (h == 0) {
        exp0 = rank2_exponents(z);
        gap0 = b2v - (Int(a.size()) - 1) - mb;
      }
      json row;
      row["h"] = h;
      row["multi_b2"] = jint(mb);
      row["equality"] = eq;
      checks.push_back(std::move(row));
      if (!verdict)
        verdict = eq;
      else if (*verdict != eq)
        throw std::logic_error("rank-3 decision depends on the chosen hyperplane");
    }
    json data;
    data["b2"] = jint(b2v);
    data["checks"] = std::move(checks);
    if (*verdict) {
      const std::vector<Int> exps = sorted_multiset({Int(1), exp0.d1, exp0.d2});
      return make_cert(Verdict::Free, a, exps,
                       make_node("thm-2.4-rank3", a.key(), json::object(), std::move(data),
                                 Verdict::Free, exps, {}, json::array()));
    }
    json witness;
    witness["kind"] = "AY-GAP";
    witness["h"] = 0;
    witness["gap"] = jint(gap0);
    return make_cert(Verdict::NotFree, a, {},
                     make_node("thm-2.4-rank3", a.key(), json::object(), std::move(data),
                               Verdict::NotFree, {}, std::move(witness), json::array()));
  }

  Certificate rank3_rule(const Arrangement& a) {
    if (a.rank() != 3) throw std::invalid_argument("rank3_decide needs an arrangement of rank 3");
    if (a.essential()) {
      Certificate cert = rank3_core(a);
      record(cert, a);
      return cert;
    }
    const Essentialization ess = essentialize(a);
    const Arrangement& inner_arr = intern(ess.arr);
    Certificate inner = rank3_core(inner_arr);
    record(inner, inner_arr);
    Certificate cert = wrap_essential(a, ess, "thm-2.4-rank3", true, inner);
    record(cert, a);
    return cert;
  }

  // -- supersolvability -----------------------------------------------------

  struct FlagSearch {
    const Arrangement& a;
    const IntersectionLattice& lat;
    std::vector<const Flat*> pair_flat;  // row-major n*n upper triangle
    std::vector<std::set<std::size_t>> failed;  // per level: flats with no completion
    std::vector<std::vector<std::optional<Int>>> b2_loc;  // per level/flat cache
    bool use_b2;

    FlagSearch(const Arrangement& arr, bool b2_mode)
        : a(arr), lat(lattice_of(arr)), use_b2(b2_mode) {
      const std::size_t n = a.size();
      pair_flat.assign(n * n, nullptr);
      if (lat.rank() >= 2)
        for (const auto& entry : lat.level(2)) {
          const auto ids = entry.flat.contained.indices();
          for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j)
              pair_flat[static_cast<std::size_t>(ids[i]) * n + static_cast<std::size_t>(ids[j])] =
                  &entry.flat;
        }
      failed.resize(static_cast<std::size_t>(lat.rank()) + 1);
      b2_loc.resize(static_cast<std::size_t>(lat.rank()) + 1);
      for (int lvl = 0; lvl <= lat.rank(); ++lvl)
        b2_loc[static_cast<std::size_t>(lvl)].resize(lat.level(lvl).size());
    }

    Int localization_b2(int level, std::size_t idx) {
      auto& slot = b2_loc[static_cast<std::size_t>(level)][idx];
      if (slot) return *slot;
      const Bitset& mask = lat.level(level)[idx].flat.contained;
      Int total = 0;
      if (lat.rank() >= 2)
        for (const auto& entry : lat.level(2)) {
          const std::size_t c = entry.flat.contained.count_and(mask);
          if (c >= 2) total += Int(c - 1);
        }
      slot = total;
      return *slot;
    }

    bool modular_step(const Bitset& parent, const Bitset& child) const {
      const auto child_ids = child.indices();
      std::vector<int> fresh;
      for (int i : child_ids)
        if (!parent.test(static_cast<std::size_t>(i))) fresh.push_back(i);
      const std::size_t n = a.size();
      for (std::size_t i = 0; i < fresh.size(); ++i)
        for (std::size_t j = i + 1; j < fresh.size(); ++j) {
          const Flat* f = pair_flat[static_cast<std::size_t>(fresh[i]) * n +
                                    static_cast<std::size_t>(fresh[j])];
          if (!f || !f->contained.intersects(parent)) return false;
        }
      return true;
    }

    bool b2_step(int level, std::size_t parent_idx, int child_level, std::size_t child_idx) {
      const Bitset& parent = lat.level(level)[parent_idx].flat.contained;
      const Bitset& child = lat.level(child_level)[child_idx].flat.contained;
      const Int np = Int(parent.count()), nc = Int(child.count());
      return localization_b2(child_level, child_idx) ==
             localization_b2(level, parent_idx) + (nc - np) * np;
    }

    std::optional<std::vector<std::size_t>> descend(int level, std::size_t idx) {
      if (level == lat.rank()) return std::vector<std::size_t>{};
      const Bitset& parent = lat.level(level)[idx].flat.contained;
      const auto& next = lat.level(level + 1);
      for (std::size_t j = 0; j < next.size(); ++j) {
        if (failed[static_cast<std::size_t>(level + 1)].contains(j)) continue;
        const Bitset& child = next[j].flat.contained;
        if (!parent.subset_of(child)) continue;
        const bool ok = use_b2 ? b2_step(level, idx, level + 1, j)
                               : modular_step(parent, child);
        if (!ok) continue;
        if (auto tail = descend(level + 1, j)) {
          tail->insert(tail->begin(), j);
          return tail;
        }
      }
      failed[static_cast<std::size_t>(level)].insert(idx);
      return std::nullopt;
    }
  };

  std::optional<std::vector<Flat>> flag_search(const Arrangement& a, bool b2_mode) {
    if (!a.essential())
      throw std::invalid_argument("flag searches require an essential arrangement");
    FlagSearch search(a, b2_mode);
    auto chain = search.descend(0, 0);
    if (!chain) return std::nullopt;
    std::vector<Flat> flag;
    // Drop the center: the flag is X_1,...,X_{rank-1}.
    for (std::size_t lvl = 1; lvl + 1 <= chain->size(); ++lvl) {
      if (static_cast<int>(lvl) > search.lat.rank() - 1) break;
      flag.push_back(search.lat.level(static_cast<int>(lvl))[(*chain)[lvl - 1]].flat);
    }
    return flag;
  }

  std::optional<Certificate> supersolvable_core(const Arrangement& a) {
    auto flag = flag_search(a, false);
    if (!flag) return std::nullopt;
    std::vector<Int> exps;
    std::vector<std::size_t> sizes;
    std::size_t prev = 0;
    for (const auto& f : *flag) {
      const std::size_t cur = f.contained.count();
      sizes.push_back(cur);
      exps.push_back(Int(cur - prev));
      prev = cur;
    }
    if (a.dim() >= 1) exps.push_back(Int(a.size() - prev));
    exps = sorted_multiset(std::move(exps));
    json data;
    data["flag"] = flag_to_json(*flag);
    data["localization_sizes"] = jsizes(sizes);
    return make_cert(Verdict::Free, a, exps,
                     make_node("def-4.1-supersolvable", a.key(), json::object(), std::move(data),
                               Verdict::Free, exps, {}, json::array()));
  }

  std::optional<Certificate> supersolvable_rule(const Arrangement& a) {
    if (a.essential()) {
      auto cert = supersolvable_core(a);
      if (cert) record(*cert, a);
      return cert;
    }
    const Essentialization ess = essentialize(a);
    const Arrangement& inner_arr = intern(ess.arr);
    auto inner = supersolvable_core(inner_arr);
    if (!inner) return std::nullopt;
    record(*inner, inner_arr);
    Certificate cert = wrap_essential(a, ess, "def-4.1-supersolvable", true, *inner);
    record(cert, a);
    return cert;
  }

  std::vector<Flat> ss_to_df(const Arrangement& a, const std::vector<Flat>& modular) {
    if (!a.essential()) throw std::invalid_argument("ss_implies_df requires an essential arrangement");
    const int r = a.rank();
    if (static_cast<int>(modular.size()) != std::max(0, r - 1))
      throw std::invalid_argument("modular flag has the wrong length");
    // Defining forms: alpha_i cuts X_i out of X_{i-1}.
    std::vector<int> alphas;
    Bitset prev(a.size());
    for (const auto& f : modular) {
      int pick = -1;
      for (int i : f.contained.indices())
        if (!prev.test(static_cast<std::size_t>(i))) {
          pick = i;
          break;
        }
      if (pick < 0) throw std::logic_error("modular flag step adds no hyperplane");
      alphas.push_back(pick);
      prev = f.contained;
    }
    {
      int pick = -1;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!prev.test(i)) {
          pick = static_cast<int>(i);
          break;
        }
      if (pick < 0) throw std::logic_error("modular flag already exhausts the arrangement");
      alphas.push_back(pick);
    }
    // Reversal: Y_i is cut out by the last i defining forms.
    std::vector<Flat> divisional;
    std::vector<int> gens;
    for (int i = 0; i < r - 1; ++i) {
      gens.push_back(alphas[static_cast<std::size_t>(r - 1 - i)]);
      Flat y = flat_of(a, gens);
      if (y.codim != i + 1) throw std::logic_error("flag reversal produced a degenerate flat");
      divisional.push_back(std::move(y));
    }
    // The reversed flag must satisfy the divisional identity.
    Int total = 0;
    std::size_t prev_size = a.size();
    for (const auto& y : divisional) {
      const std::size_t cur = restriction(a, y).arr.size();
      total += Int(prev_size - cur) * Int(cur);
      prev_size = cur;
    }
    if (total != b2c(a))
      throw std::logic_error("reversed modular flag fails the divisional identity");
    return divisional;
  }

  // -- divisional freeness ----------------------------------------------------

  std::optional<DivInfo> div_search(const Arrangement& a) {
    {
      std::scoped_lock lock(mutex);
      if (auto it = div_memo.find(a.key()); it != div_memo.end()) return it->second;
    }
    std::optional<DivInfo> result;
    if (a.rank() <= 2) {
      result = DivInfo{chi_roots_or_throw(a), {}, {a.size()}};
    } else {
      const Int b2a = b2c(a);
      for (std::size_t h = 0; h < a.size() && !result; ++h) {
        const Restriction res = restriction(a, h);
        const Arrangement& rarr = intern(res.arr);
        const Int gap = Int(a.size()) - Int(rarr.size());
        if (b2a != b2c(rarr) + gap * Int(rarr.size())) continue;
        if (auto sub = div_search(rarr)) {
          DivInfo info;
          info.exponents = multiset_union(sub->exponents, {gap});
          info.chain = sub->chain;
          info.chain.insert(info.chain.begin(), static_cast<int>(h));
          info.sizes = sub->sizes;
          info.sizes.insert(info.sizes.begin(), a.size());
          result = std::move(info);
        }
      }
    }
    std::scoped_lock lock(mutex);
    return div_memo.try_emplace(a.key(), std::move(result)).first->second;
  }

  // Reconstructs the divisional flag in the coordinates of `a` by walking the
  // chain of chosen hyperplanes and pulling each back through the trace map.
  std::vector<Flat> div_flag(const Arrangement& a, const std::vector<int>& chain) {
    std::vector<Flat> flag;
    std::vector<int> gens;
    Arrangement current = a;
    std::vector<int> origin(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) origin[i] = static_cast<int>(i);
    for (int k : chain) {
      const Restriction res = restriction(current, static_cast<std::size_t>(k));
      gens.push_back(origin[static_cast<std::size_t>(res.fibers[static_cast<std::size_t>(k)].front())]);
      Flat x = flat_of(a, gens);
      if (x.codim != static_cast<int>(flag.size()) + 1)
        throw std::logic_error("divisional chain produced a degenerate flat");
      flag.push_back(std::move(x));
      std::vector<int> next_origin(res.arr.size());
      for (std::size_t j = 0; j < res.arr.size(); ++j) {
        int best = -1;
        for (int p : res.fibers[j]) {
          const int cand = origin[static_cast<std::size_t>(p)];
          if (best < 0 || cand < best) best = cand;
        }
        next_origin[j] = best;
      }
      origin = std::move(next_origin);
      current = res.arr;
    }
    // One more level: any hyperplane of the final rank-2 restriction.
    if (current.rank() >= 2 && current.size() > 0) {
      gens.push_back(origin[0]);
      Flat x = flat_of(a, gens);
      if (x.codim != static_cast<int>(flag.size()) + 1)
        throw std::logic_error("divisional chain produced a degenerate final flat");
      flag.push_back(std::move(x));
    }
    return flag;
  }

  std::optional<Certificate> divisional_core(const Arrangement& a) {
    auto info = div_search(a);
    if (!info) return std::nullopt;
    json data;
    data["chain"] = info->chain;
    data["restriction_sizes"] = jsizes(info->sizes);
    data["flag"] = flag_to_json(div_flag(a, info->chain));
    return make_cert(Verdict::Free, a, info->exponents,
                     make_node("def-4.3-divisional", a.key(), json::object(), std::move(data),
                               Verdict::Free, info->exponents, {}, json::array()));
  }

  std::optional<Certificate> divisional_rule(const Arrangement& a) {
    if (a.essential()) {
      auto cert = divisional_core(a);
      if (cert) record(*cert, a);
      return cert;
    }
    const Essentialization ess = essentialize(a);
    const Arrangement& inner_arr = intern(ess.arr);
    auto inner = divisional_core(inner_arr);
    if (!inner) return std::nullopt;
    record(*inner, inner_arr);
    Certificate cert = wrap_essential(a, ess, "def-4.3-divisional", true, *inner);
    record(cert, a);
    return cert;
  }

  // -- division, triple, addition-deletion -----------------------------------

  std::optional<Certificate> division(const Arrangement& a, std::size_t h) {
    const Restriction res = restriction(a, h);
    const Arrangement& rarr = intern(res.arr);
    const IntPolynomial chi_a = char_poly(a);
    const IntPolynomial chi_r = char_poly(rarr);
    if (!poly_divides(chi_r, chi_a)) return std::nullopt;
    const Certificate sub = certify_inner(rarr, true);
    if (sub.verdict != Verdict::Free) return std::nullopt;
    const Int gap = Int(a.size()) - Int(rarr.size());
    const std::vector<Int> exps = multiset_union(sub.exponents, {gap});
    json params;
    params["h"] = h;
    json data;
    data["restriction"] = rarr.key();
    data["quotient_root"] = jint(gap);
    data["chi"] = jints(chi_a.coeffs());
    data["chi_restriction"] = jints(chi_r.coeffs());
    Certificate cert = make_cert(
        Verdict::Free, a, exps,
        make_node("thm-division", a.key(), std::move(params), std::move(data), Verdict::Free,
                  exps, {}, json::array({sub.root})));
    record(cert, a);
    return cert;
  }

  std::optional<std::pair<Certificate, Certificate>> triple(const Arrangement& a, std::size_t h) {
    const Restriction res = restriction(a, h);
    const Arrangement& rarr = intern(res.arr);
    const Int gap = Int(a.size()) - Int(rarr.size());
    const Int lhs = b2c(a);
    const Int rhs = b2c(rarr) + gap * Int(rarr.size());
    if (lhs != rhs) return std::nullopt;
    const Certificate sub = certify_inner(rarr, true);
    if (sub.verdict != Verdict::Free) return std::nullopt;

    const std::vector<Int> exps_full = multiset_union(sub.exponents, {gap});
    json params;
    params["h"] = h;
    json data;
    data["restriction"] = rarr.key();
    data["b2"] = jint(lhs);
    data["b2_restriction"] = jint(b2c(rarr));
    data["gap"] = jint(gap);
    Certificate full = make_cert(
        Verdict::Free, a, exps_full,
        make_node("prop-2.7-triple", a.key(), params, data, Verdict::Free, exps_full, {},
                  json::array({sub.root})));
    record(full, a);

    const Arrangement& del = intern(delete_hyperplane(a, h));
    const std::vector<Int> exps_del = multiset_union(sub.exponents, {gap - 1});
    json del_params = params;
    del_params["base"] = a.key();
    Certificate deletion = make_cert(
        Verdict::Free, del, exps_del,
        make_node("prop-2.7-triple", del.key(), std::move(del_params), std::move(data),
                  Verdict::Free, exps_del, {}, json::array({sub.root})));
    record(deletion, del);
    return std::make_pair(std::move(full), std::move(deletion));
  }

  std::optional<Certificate> adddel(const Arrangement& a, std::size_t h, TripleTarget target,
                                    bool allow) {
    const Restriction res = restriction(a, h);
    const Arrangement& rarr = intern(res.arr);
    const Arrangement& del = intern(delete_hyperplane(a, h));
    const char* target_name = target == TripleTarget::Full       ? "full"
                              : target == TripleTarget::Deletion ? "deletion"
                                                                 : "restriction";
    json params;
    params["h"] = h;
    params["target"] = target_name;
    params["deletion_recursion"] = allow;
    if (target != TripleTarget::Full) params["base"] = a.key();

    auto finish = [&](const Arrangement& subject, std::vector<Int> exps, json data,
                      json children) -> Certificate {
      Certificate cert = make_cert(Verdict::Free, subject, exps,
                                   make_node("thm-1.1-addition-deletion", subject.key(),
                                             std::move(params), std::move(data), Verdict::Free,
                                             exps, {}, std::move(children)));
      record(cert, subject);
      return cert;
    };

    if (target == TripleTarget::Full) {
      const Certificate cd = certify_inner(del, allow);
      if (cd.verdict != Verdict::Free) return std::nullopt;
      const Certificate cr = certify_inner(rarr, true);
      if (cr.verdict != Verdict::Free) return std::nullopt;
      auto leftover = multiset_minus(cd.exponents, cr.exponents);
      if (!leftover || leftover->size() != 1) return std::nullopt;
      const Int d = (*leftover)[0] + 1;
      json data;
      data["pattern_d"] = jint(d);
      return finish(a, multiset_union(cr.exponents, {d}), std::move(data),
                    json::array({cd.root, cr.root}));
    }
    if (target == TripleTarget::Deletion) {
      const Certificate ca = certify_inner(a, allow);
      if (ca.verdict != Verdict::Free) return std::nullopt;
      const Certificate cr = certify_inner(rarr, true);
      if (cr.verdict != Verdict::Free) return std::nullopt;
      auto leftover = multiset_minus(ca.exponents, cr.exponents);
      if (!leftover || leftover->size() != 1) return std::nullopt;
      const Int d = (*leftover)[0];
      if (d < 1) return std::nullopt;
      json data;
      data["pattern_d"] = jint(d);
      return finish(del, multiset_union(cr.exponents, {d - 1}), std::move(data),
                    json::array({ca.root, cr.root}));
    }
    // target == Restriction: from A and A' both free.
    const Certificate ca = certify_inner(a, allow);
    if (ca.verdict != Verdict::Free) return std::nullopt;
    const Certificate cd = certify_inner(del, allow);
    if (cd.verdict != Verdict::Free) return std::nullopt;
    auto up = multiset_minus(ca.exponents, cd.exponents);
    auto down = multiset_minus(cd.exponents, ca.exponents);
    if (!up || up->size() != 1 || !down || down->size() != 1) return std::nullopt;
    const Int d = (*up)[0];
    if ((*down)[0] != d - 1) return std::nullopt;
    auto rest = multiset_minus(ca.exponents, {d});
    if (!rest || sum_of(*rest) != Int(rarr.size())) return std::nullopt;
    json data;
    data["pattern_d"] = jint(d);
    return finish(rarr, *rest, std::move(data), json::array({ca.root, cd.root}));
  }

  // -- deform / multideform / flags / descent --------------------------------

  bool division_equality(const Arrangement& a, const Arrangement& rarr) {
    const Int gap = Int(a.size()) - Int(rarr.size());
    return b2c(a) == b2c(rarr) + gap * Int(rarr.size());
  }

  std::optional<Certificate> deform(const Arrangement& a, std::size_t h, std::size_t l) {
    if (h >= a.size() || l >= a.size() || h == l) return std::nullopt;
    const Certificate ca = certify_inner(a, true);
    if (ca.verdict != Verdict::Free) return std::nullopt;
    const Restriction res = restriction(a, h);
    const Arrangement& rarr = intern(res.arr);
    if (!division_equality(a, rarr)) return std::nullopt;
    const Flat overlap = flat_of(a, {static_cast<int>(h), static_cast<int>(l)});
    if (overlap.contained.count() < 3) return std::nullopt;
    const Arrangement& del = intern(delete_hyperplane(a, l));
    const Certificate cl = certify_inner(del, true);
    if (cl.verdict != Verdict::Free) return std::nullopt;
    const Int d = Int(a.size()) - Int(rarr.size());
    auto exps = multiset_minus(ca.exponents, {d});
    if (!exps || sum_of(*exps) != Int(rarr.size())) return std::nullopt;
    const std::vector<Int>& target_exps = *exps;
    json params;
    params["base"] = a.key();
    params["h"] = h;
    params["l"] = l;
    json data;
    data["overlap_size"] = overlap.contained.count();
    data["b2"] = jint(b2c(a));
    data["b2_restriction"] = jint(b2c(rarr));
    data["d"] = jint(d);
    Certificate cert = make_cert(
        Verdict::Free, rarr, target_exps,
        make_node("thm-1.4-deform", rarr.key(), std::move(params), std::move(data), Verdict::Free,
                  target_exps, {}, json::array({ca.root, cl.root})));
    record(cert, rarr);
    return cert;
  }

  std::optional<Certificate> multideform(const Arrangement& a, std::size_t h, std::size_t x) {
    if (h >= a.size()) return std::nullopt;
    const Certificate ca = certify_inner(a, true);
    if (ca.verdict != Verdict::Free) return std::nullopt;
    const Restriction res = restriction(a, h);
    const Arrangement& rarr = intern(res.arr);
    if (x >= rarr.size()) return std::nullopt;
    if (!poly_divides(char_poly(rarr), char_poly(a))) return std::nullopt;
    if (res.fibers[x].size() < 2) return std::nullopt;  // needs m^H(X) >= 2

    json justification;
    json children = json::array({ca.root});
    if (rarr.rank() <= 2) {
      justification["kind"] = "rank-le-2";
    } else {
      // Theorem 2.2 route: a free deletion A \ {L} with L in the fiber of X.
      bool found = false;
      for (int parent : res.fibers[x]) {
        if (static_cast<std::size_t>(parent) == h) continue;
        const Arrangement& del = intern(delete_hyperplane(a, static_cast<std::size_t>(parent)));
        const Certificate cl = certify_inner(del, true);
        if (cl.verdict == Verdict::Free) {
          justification["kind"] = "ziegler-of-free-deletion";
          justification["l"] = parent;
          children.push_back(cl.root);
          found = true;
          break;
        }
      }
      if (!found) return std::nullopt;  // rank >= 3 multi-freeness undecidable here
    }
    const std::vector<Int> exps = chi_roots_or_throw(rarr);
    json params;
    params["base"] = a.key();
    params["h"] = h;
    params["x"] = x;
    json data;
    data["multiplicity"] = res.fibers[x].size();
    data["justification"] = std::move(justification);
    Certificate cert = make_cert(
        Verdict::Free, rarr, exps,
        make_node("cor-3.5-multideform", rarr.key(), std::move(params), std::move(data),
                  Verdict::Free, exps, {}, std::move(children)));
    record(cert, rarr);
    return cert;
  }

  std::optional<std::vector<Certificate>> flagprop(const Arrangement& a,
                                                   const std::vector<Flat>& flag,
                                                   bool betti_form) {
    if (flag.empty()) return std::nullopt;
    for (std::size_t i = 0; i < flag.size(); ++i) {
      if (flag[i].codim != static_cast<int>(i) + 1) return std::nullopt;
      if (i > 0 && !flag[i - 1].contained.subset_of(flag[i].contained)) return std::nullopt;
    }
    const std::size_t k = flag.size();
    std::vector<Arrangement> restrictions;  // R_1..R_k
    restrictions.reserve(k);
    for (const auto& f : flag) restrictions.push_back(intern(restriction(a, f).arr));
    std::vector<std::size_t> sizes{a.size()};
    for (const auto& r : restrictions) sizes.push_back(r.size());
    std::vector<Int> gaps;
    for (std::size_t i = 0; i < k; ++i) gaps.push_back(Int(sizes[i]) - Int(sizes[i + 1]));

    const Certificate ck = certify_inner(restrictions.back(), true);
    if (ck.verdict != Verdict::Free) return std::nullopt;

    json params;
    params["base"] = a.key();
    params["flag"] = flag_to_json(flag);
    params["betti_form"] = betti_form;

    std::vector<Int> full_exps;
    json children = json::array();
    std::string rule;
    if (betti_form) {
      rule = "cor-3.3";
      full_exps = multiset_union(ck.exponents, gaps);
      for (const auto& d : full_exps)
        if (d < 1) return std::nullopt;
      if (sum_of(full_exps) != Int(a.size())) return std::nullopt;
      if (pairwise_product_sum(full_exps) != b2c(a)) return std::nullopt;
      children.push_back(ck.root);
    } else {
      rule = "cor-3.2";
      const Certificate ca = certify_inner(a, true);
      if (ca.verdict != Verdict::Free) return std::nullopt;
      full_exps = ca.exponents;
      if (multiset_union(ck.exponents, gaps) != full_exps) return std::nullopt;
      children.push_back(ca.root);
      children.push_back(ck.root);
    }

    json data;
    data["restriction_sizes"] = jsizes(sizes);
    data["gaps"] = jints(gaps);
    data["d"] = jints(full_exps);

    std::vector<Certificate> out;
    const std::size_t first = betti_form ? 0 : 1;
    for (std::size_t i = first; i + 1 <= k && i < k; ++i) {
      // Conclusion for R_i (R_0 = A in the Betti form).
      std::vector<Int> exps = ck.exponents;
      for (std::size_t j = i; j < k; ++j) exps = multiset_union(exps, {gaps[j]});
      const Arrangement& subject = i == 0 ? a : restrictions[i - 1];
      json member_params = params;
      member_params["member"] = i;
      Certificate cert = make_cert(
          Verdict::Free, subject, exps,
          make_node(rule, subject.key(), std::move(member_params), data, Verdict::Free, exps, {},
                    children));
      record(cert, subject);
      out.push_back(std::move(cert));
    }
    if (out.empty()) return std::nullopt;
    return out;
  }

  std::optional<std::vector<Certificate>> descent(const Arrangement& a,
                                                  const std::vector<std::size_t>& hs) {
    const std::size_t s = hs.size();
    if (s < 2) return std::nullopt;
    std::set<std::size_t> uniq(hs.begin(), hs.end());
    if (uniq.size() != s) return std::nullopt;
    std::vector<int> ids;
    for (auto h : hs) {
      if (h >= a.size()) return std::nullopt;
      ids.push_back(static_cast<int>(h));
    }
    const Flat x = flat_of(a, ids);
    if (x.codim != 2) return std::nullopt;
    if (x.contained.count() < s + 1) return std::nullopt;

    const Certificate ca = certify_inner(a, true);
    if (ca.verdict != Verdict::Free) return std::nullopt;
    const Arrangement& del1 = intern(delete_hyperplane(a, hs[0]));
    const Certificate c1 = certify_inner(del1, true);
    if (c1.verdict != Verdict::Free) return std::nullopt;

    const Arrangement& r1 = intern(restriction(a, hs[0]).arr);
    const Int d = Int(a.size()) - Int(r1.size());
    auto rest = multiset_minus(ca.exponents, {d});
    if (!rest) return std::nullopt;
    if (d < Int(s)) return std::nullopt;
    for (std::size_t i = 1; i < s; ++i) {
      const Arrangement& ri = intern(restriction(a, hs[i]).arr);
      if (!division_equality(a, ri)) return std::nullopt;
    }

    json params;
    params["base"] = a.key();
    json hs_json = json::array();
    for (auto h : hs) hs_json.push_back(h);
    params["hs"] = std::move(hs_json);
    json data;
    data["flat"] = x.key_str;
    data["flat_size"] = x.contained.count();
    data["d"] = jint(d);
    const json children = json::array({ca.root, c1.root});

    std::vector<Certificate> out;
    for (std::size_t i = 1; i < s; ++i) {
      const Arrangement& del = intern(delete_hyperplane(a, hs[i]));
      const std::vector<Int> exps = multiset_union(*rest, {d - 1});
      json member_params = params;
      member_params["member"] = i;
      Certificate cert = make_cert(
          Verdict::Free, del, exps,
          make_node("cor-3.4-descent", del.key(), std::move(member_params), data, Verdict::Free,
                    exps, {}, children));
      record(cert, del);
      out.push_back(std::move(cert));
    }
    {
      std::vector<Hyperplane> remaining;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!uniq.contains(i)) remaining.push_back(a[i]);
      const Arrangement& joint = intern(Arrangement(a.dim(), std::move(remaining)));
      const std::vector<Int> exps = multiset_union(*rest, {d - Int(s)});
      json member_params = params;
      member_params["member"] = "joint";
      Certificate cert = make_cert(
          Verdict::Free, joint, exps,
          make_node("cor-3.4-descent", joint.key(), std::move(member_params), data, Verdict::Free,
                    exps, {}, children));
      record(cert, joint);
      out.push_back(std::move(cert));
    }
    return out;
  }

  // -- Ziegler non-freeness ----------------------------------------------------

  std::optional<Certificate> ziegler_nonfree(const Arrangement& a, std::size_t h) {
    if (a.dim() < 3) return std::nullopt;
    const Certificate ca = certify_inner(a, true);
    if (ca.verdict != Verdict::Free) return std::nullopt;
    const Multiarrangement z = ziegler_restriction(a, h);
    const Arrangement& rarr = intern(z.base());
    const auto& lat = lattice_of(rarr);
    if (lat.rank() < 2) return std::nullopt;
    for (const auto& entry : lat.level(2)) {
      const auto ids = entry.flat.contained.indices();
      std::vector<Int> mults;
      for (int i : ids) mults.push_back(z.multiplicity(static_cast<std::size_t>(i)));
      std::sort(mults.rbegin(), mults.rend());
      int condition = 0;
      if (ids.size() == 2 && mults[0] > 1 && mults[1] > 1) condition = 1;
      else if (ids.size() == 3 && mults[2] >= 2) condition = 2;
      else if (ids.size() == 3 && mults[0] >= 3 && mults[1] >= 2) condition = 3;
      if (condition == 0) continue;

      const Int slack =
          b2c(a) - b2c(rarr) - (Int(a.size()) - Int(rarr.size())) * Int(rarr.size());
      if (slack < 1)
        throw std::logic_error("Ziegler witness without strict b2 slack — impossible");
      const Arrangement& del = intern(delete_hyperplane(a, h));
      json params;
      params["base"] = a.key();
      params["h"] = h;
      json witness;
      witness["kind"] = "ZIEGLER-L2";
      witness["condition"] = condition;
      witness["flat"] = entry.flat.key_str;
      json members = json::array();
      for (int i : ids) members.push_back(i);
      witness["members"] = std::move(members);
      witness["multiplicities"] = jints(mults);
      witness["strict_slack"] = jint(slack);
      json data;
      data["restriction"] = rarr.key();
      Certificate cert = make_cert(
          Verdict::NotFree, del, {},
          make_node("thm-1.5-cond" + std::to_string(condition), del.key(), std::move(params),
                    std::move(data), Verdict::NotFree, {}, std::move(witness),
                    json::array({ca.root})));
      record(cert, del);
      return cert;
    }
    return std::nullopt;
  }

  // -- scans -------------------------------------------------------------------

  json conjecture_scan(const Arrangement& input) {
    const Arrangement& a = intern(input);
    const Certificate ca = certify_inner(a, true);
    const IntPolynomial pi_a = poincare_poly(a);

    std::vector<json> rows(a.size());
    parallel_for(options.threads, a.size(), [&](std::size_t h) {
      const Arrangement& rarr = intern(restriction(a, h).arr);
      const Arrangement& del = intern(delete_hyperplane(a, h));
      const IntPolynomial pi_r = poincare_poly(rarr);
      const IntPolynomial pi_d = poincare_poly(del);
      const auto roots = integer_root_split(char_poly(rarr));
      const bool cond1 = roots.has_value();
      const bool divides_full = poly_divides(pi_r, pi_a);
      const bool divides_deletion = poly_divides(pi_r, pi_d);
      const bool cond2 = divides_full && divides_deletion;
      const Certificate cr = certify_inner(rarr, true);
      const Certificate cd = certify_inner(del, true);

      bool candidate = false, review = false;
      if (cond1 && cond2) {
        const bool realize3 = (ca.verdict == Verdict::NotFree && cd.verdict == Verdict::NotFree) ||
                              (ca.verdict == Verdict::Free && cd.verdict == Verdict::NotFree);
        if (realize3)
          candidate = true;
        else if (cd.verdict == Verdict::Undecided ||
                 (cd.verdict == Verdict::NotFree && ca.verdict == Verdict::Undecided))
          review = true;
      }
      json row;
      row["h"] = h;
      row["restriction"] = rarr.key();
      row["restriction_size"] = rarr.size();
      row["pi_splits"] = cond1;
      if (cond1) row["restriction_exponents"] = jints(*roots);
      row["pi_divides_full"] = divides_full;
      row["pi_divides_deletion"] = divides_deletion;
      row["verdict_full"] = verdict_str(ca.verdict);
      row["verdict_deletion"] = verdict_str(cd.verdict);
      row["verdict_restriction"] = verdict_str(cr.verdict);
      row["candidate"] = candidate;
      row["needs_review"] = review;
      rows[h] = std::move(row);
    });

    int candidates = 0, reviews = 0;
    json rows_json = json::array();
    for (auto& row : rows) {
      if (row["candidate"].get<bool>()) ++candidates;
      if (row["needs_review"].get<bool>()) ++reviews;
      rows_json.push_back(std::move(row));
    }
    json report;
    report["subject"] = a.key();
    report["dim"] = a.dim();
    report["rank"] = a.rank();
    report["size"] = a.size();
    report["verdict"] = verdict_str(ca.verdict);
    report["rows"] = std::move(rows_json);
    report["candidates"] = candidates;
    report["needs_review"] = reviews;
    if (a.rank() <= 3) {
      report["note"] = "rank <= 3: no candidates possible";
      if (candidates != 0)
        throw std::logic_error("counterexample candidate on a rank <= 3 arrangement — impossible");
    }
    return report;
  }

  json deletion_scan(const Arrangement& input) {
    const Arrangement& a = intern(input);
    const Certificate ca = certify_inner(a, true);
    std::vector<json> rows(a.size());
    parallel_for(options.threads, a.size(), [&](std::size_t h) {
      json row;
      row["h"] = h;
      if (auto t = triple(a, h)) {
        row["triple"] = true;
        row["triple_exponents_full"] = jints(t->first.exponents);
        row["triple_exponents_deletion"] = jints(t->second.exponents);
      } else {
        row["triple"] = false;
      }
      if (auto nz = ziegler_nonfree(a, h)) {
        row["ziegler_nonfree"] = true;
        row["ziegler_witness"] = nz->root["witness"];
      } else {
        row["ziegler_nonfree"] = false;
      }
      rows[h] = std::move(row);
    });
    json out;
    out["subject"] = a.key();
    out["verdict"] = verdict_str(ca.verdict);
    out["rows"] = json::array();
    for (auto& row : rows) out["rows"].push_back(std::move(row));
    return out;
  }
};

// ---------------------------------------------------------------------------

FreenessEngine::FreenessEngine(Options options)
    : options_(options), impl_(std::make_unique<Impl>(options)) {}

FreenessEngine::~FreenessEngine() = default;

Certificate FreenessEngine::certify(const Arrangement& a) {
  return impl_->certify_inner(a, options_.deletion_recursion);
}

std::optional<Certificate> FreenessEngine::factorization_filter(const Arrangement& a) {
  return impl_->filter(impl_->intern(a));
}

Certificate FreenessEngine::rank3_decide(const Arrangement& a) {
  return impl_->rank3_rule(impl_->intern(a));
}

std::optional<std::vector<Flat>> FreenessEngine::modular_flag(const Arrangement& a) {
  return impl_->flag_search(impl_->intern(a), false);
}

std::optional<std::vector<Flat>> FreenessEngine::b2_flag(const Arrangement& a) {
  return impl_->flag_search(impl_->intern(a), true);
}

std::optional<Certificate> FreenessEngine::supersolvable(const Arrangement& a) {
  return impl_->supersolvable_rule(impl_->intern(a));
}

std::vector<Flat> FreenessEngine::ss_implies_df(const Arrangement& a,
                                                const std::vector<Flat>& modular) {
  return impl_->ss_to_df(impl_->intern(a), modular);
}

std::optional<Certificate> FreenessEngine::divisional_freeness(const Arrangement& a) {
  return impl_->divisional_rule(impl_->intern(a));
}

std::optional<Certificate> FreenessEngine::division_step(const Arrangement& a, std::size_t h) {
  return impl_->division(impl_->intern(a), h);
}

std::optional<Certificate> FreenessEngine::triple_rule(const Arrangement& a, std::size_t h) {
  auto pair = impl_->triple(impl_->intern(a), h);
  if (!pair) return std::nullopt;
  return pair->first;
}

std::optional<Certificate> FreenessEngine::addition_deletion_step(const Arrangement& a,
                                                                  std::size_t h,
                                                                  TripleTarget target,
                                                                  bool deletion_recursion) {
  return impl_->adddel(impl_->intern(a), h, target, deletion_recursion);
}

std::optional<Certificate> FreenessEngine::deform_step(const Arrangement& a, std::size_t h,
                                                       std::size_t l) {
  return impl_->deform(impl_->intern(a), h, l);
}

std::optional<Certificate> FreenessEngine::multideform_step(const Arrangement& a, std::size_t h,
                                                            std::size_t x_induced) {
  return impl_->multideform(impl_->intern(a), h, x_induced);
}

std::optional<std::vector<Certificate>> FreenessEngine::flag_propagation(
    const Arrangement& a, const std::vector<Flat>& flag, bool betti_form) {
  return impl_->flagprop(impl_->intern(a), flag, betti_form);
}

std::optional<std::vector<Certificate>> FreenessEngine::descent_step(
    const Arrangement& a, const std::vector<std::size_t>& hs) {
  return impl_->descent(impl_->intern(a), hs);
}

std::optional<Certificate> FreenessEngine::nonfree_by_ziegler(const Arrangement& a,
                                                              std::size_t h) {
  return impl_->ziegler_nonfree(impl_->intern(a), h);
}

json FreenessEngine::conjecture_scan(const Arrangement& a) { return impl_->conjecture_scan(a); }

json FreenessEngine::deletion_scan(const Arrangement& a) { return impl_->deletion_scan(a); }

std::optional<Verdict> FreenessEngine::known_verdict(const std::string& key) const {
  std::scoped_lock lock(impl_->mutex);
  if (auto it = impl_->facts.find(key); it != impl_->facts.end()) return it->second;
  return std::nullopt;
}

std::vector<Certificate> FreenessEngine::recorded_certificates() const {
  std::scoped_lock lock(impl_->mutex);
  return impl_->records;
}

// ---------------------------------------------------------------------------

void verify_certificate(const Certificate& cert, const Arrangement& subject) {
  if (subject.key() != cert.subject)
    throw std::logic_error("certificate subject does not match the arrangement");
  if (cert.verdict != Verdict::Free) return;
  if (static_cast<int>(cert.exponents.size()) != subject.dim())
    throw std::logic_error("FREE certificate with wrong exponent count");
  if (sum_of(cert.exponents) != Int(subject.size()))
    throw std::logic_error("FREE certificate exponents do not sum to |A|");
  if (pairwise_product_sum(cert.exponents) != b2(subject))
    throw std::logic_error("FREE certificate violates the b2 identity");
  if (char_poly(subject) != IntPolynomial::from_roots(cert.exponents))
    throw std::logic_error("FREE certificate violates factorization");
}

bool replay_certificate(const json& root) {
  const std::string rule = root.at("rule").get<std::string>();
  const json& params = root.at("params");
  const auto base_of = [&](const json& p) {
    return arrangement_from_key(p.at("base").get<std::string>());
  };
  const Arrangement subject = arrangement_from_key(root.at("subject").get<std::string>());

  const bool allow = !params.contains("deletion_recursion") ||
                     params.at("deletion_recursion").get<bool>();
  FreenessEngine engine(FreenessEngine::Options{1, allow});

  std::optional<json> produced;
  if (rule == "thm-2.1-factorization") {
    if (auto c = engine.factorization_filter(subject)) produced = c->root;
  } else if (rule == "rank-le-2" || rule == "undecided" || rule == "essentialize" ||
             rule == "thm-2.4-rank3" || rule == "def-4.1-supersolvable" ||
             rule == "def-4.3-divisional" || rule == "prop-2.7-triple" ||
             rule == "thm-division" || rule == "thm-1.1-addition-deletion") {
    if (rule == "essentialize") {
      const std::string via = params.at("via").get<std::string>();
      if (via == "certify")
        produced = engine.certify(subject).root;
      else if (via == "thm-2.4-rank3")
        produced = engine.rank3_decide(subject).root;
      else if (via == "def-4.1-supersolvable") {
        if (auto c = engine.supersolvable(subject)) produced = c->root;
      } else if (via == "def-4.3-divisional") {
        if (auto c = engine.divisional_freeness(subject)) produced = c->root;
      }
    } else if (rule == "rank-le-2" || rule == "undecided") {
      produced = engine.certify(subject).root;
    } else if (rule == "thm-2.4-rank3") {
      produced = engine.rank3_decide(subject).root;
    } else if (rule == "def-4.1-supersolvable") {
      if (auto c = engine.supersolvable(subject)) produced = c->root;
    } else if (rule == "def-4.3-divisional") {
      if (auto c = engine.divisional_freeness(subject)) produced = c->root;
    } else if (rule == "thm-division") {
      if (auto c = engine.division_step(subject, params.at("h").get<std::size_t>()))
        produced = c->root;
    } else if (rule == "prop-2.7-triple") {
      if (params.contains("base")) {
        // Deletion-side conclusion: re-run on the parent and compare the
        // recorded deletion certificate.
        const Arrangement parent = base_of(params);
        FreenessEngine fresh(FreenessEngine::Options{1, true});
        if (fresh.triple_rule(parent, params.at("h").get<std::size_t>())) {
          for (const auto& cert : fresh.recorded_certificates())
            if (cert.root.contains("rule") &&
                cert.root.at("rule") == "prop-2.7-triple" &&
                cert.subject == root.at("subject").get<std::string>() &&
                cert.root.at("params").contains("base"))
              produced = cert.root;
        }
      } else {
        if (auto c = engine.triple_rule(subject, params.at("h").get<std::size_t>()))
          produced = c->root;
      }
    } else if (rule == "thm-1.1-addition-deletion") {
      const std::string target = params.at("target").get<std::string>();
      const Arrangement base =
          target == "full" ? subject : base_of(params);
      const auto t = target == "full"       ? FreenessEngine::TripleTarget::Full
                     : target == "deletion" ? FreenessEngine::TripleTarget::Deletion
                                            : FreenessEngine::TripleTarget::Restriction;
      if (auto c = engine.addition_deletion_step(base, params.at("h").get<std::size_t>(), t, allow))
        produced = c->root;
    }
  } else if (rule == "thm-1.4-deform") {
    if (auto c = engine.deform_step(base_of(params), params.at("h").get<std::size_t>(),
                                    params.at("l").get<std::size_t>()))
      produced = c->root;
  } else if (rule == "cor-3.5-multideform") {
    if (auto c = engine.multideform_step(base_of(params), params.at("h").get<std::size_t>(),
                                         params.at("x").get<std::size_t>()))
      produced = c->root;
  } else if (rule == "cor-3.2" || rule == "cor-3.3") {
    const Arrangement base = base_of(params);
    const auto flag = flag_from_json(base, params.at("flag"));
    if (auto certs = engine.flag_propagation(base, flag, rule == "cor-3.3")) {
      for (const auto& c : *certs)
        if (c.root.at("params").at("member") == params.at("member")) produced = c.root;
    }
  } else if (rule == "cor-3.4-descent") {
    const Arrangement base = base_of(params);
    std::vector<std::size_t> hs;
    for (const auto& h : params.at("hs")) hs.push_back(h.get<std::size_t>());
    if (auto certs = engine.descent_step(base, hs)) {
      for (const auto& c : *certs)
        if (c.root.at("params").at("member") == params.at("member")) produced = c.root;
    }
  } else if (rule.starts_with("thm-1.5-cond")) {
    if (auto c = engine.nonfree_by_ziegler(base_of(params), params.at("h").get<std::size_t>()))
      produced = c->root;
  } else {
    return false;
  }
  return produced && *produced == root;
}

}  // namespace arrcert
