// Agreeing-pair search into a catalog of target groups.
//
// The unit of work is a (target, psi_H) job: for it, psi_K ranges over the
// homomorphisms K -> target that extend phi(a) -> psi_H(a). Jobs are ordered
// canonically; the answer is the first accepted pair of the first successful
// job. The OpenMP path evaluates jobs out of order and skips any job that can
// no longer beat the best one found, so both paths return the same pair.

#include <atomic>
#include <map>

#include "cpsep/separability.hpp"
#include "witness_search.hpp"

namespace cpsep::detail {

namespace {

struct Job {
  std::size_t target;
  std::size_t h_index;
};

bool onto(const FiniteGroup& target, const GroupHom& psi_H, const GroupHom& psi_K) {
  std::vector<Elem> gens = psi_H.images();
  gens.insert(gens.end(), psi_K.images().begin(), psi_K.images().end());
  return subgroup_closure(target, gens).size() == target.order();
}

class AgreeingSearch {
 public:
  AgreeingSearch(const AmalgamSpec& spec, const Word& f, const Word& g, std::span<const FiniteGroup> catalog)
      : spec_(spec), f_(f), g_(g), catalog_(catalog) {
    for (std::size_t t = 0; t < catalog_.size(); ++t) {
      classes_.push_back(conjugacy_class_index(catalog_[t]));
      homs_h_.push_back(enumerate_homs(spec_.H(), catalog_[t]));
      for (std::size_t i = 0; i < homs_h_.back().size(); ++i) jobs_.push_back({t, i});
    }
  }

  std::size_t job_count() const { return jobs_.size(); }

  // Calls visit(hit) for accepted pairs of job j in order until it returns false.
  template <typename Visit>
  void run(std::size_t j, Visit&& visit) const {
    const Job& job = jobs_[j];
    const FiniteGroup& target = catalog_[job.target];
    const GroupHom& psi_h = homs_h_[job.target][job.h_index];
    std::map<Elem, Elem> partial;
    for (Elem a : spec_.A().elements()) partial[spec_.phi(a)] = psi_h(a);
    for (auto& psi_k : enumerate_homs(spec_.K(), target, partial)) {
      const Elem fi = word_image(target, psi_h, psi_k, f_);
      const Elem gi = word_image(target, psi_h, psi_k, g_);
      if (classes_[job.target][fi] == classes_[job.target][gi]) continue;
      if (!onto(target, psi_h, psi_k)) continue;
      if (!visit(AgreeingHit{job.target, psi_h, std::move(psi_k)})) return;
    }
  }

  std::optional<AgreeingHit> first_in_job(std::size_t j) const {
    std::optional<AgreeingHit> hit;
    run(j, [&](AgreeingHit h) {
      hit = std::move(h);
      return false;
    });
    return hit;
  }

 private:
  const AmalgamSpec& spec_;
  const Word& f_;
  const Word& g_;
  std::span<const FiniteGroup> catalog_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::vector<GroupHom>> homs_h_;
  std::vector<Job> jobs_;
};

}  // namespace

std::optional<AgreeingHit> first_agreeing_hit_serial(const AmalgamSpec& spec, const Word& f, const Word& g,
                                                     std::span<const FiniteGroup> catalog) {
  const AgreeingSearch search(spec, f, g, catalog);
  for (std::size_t j = 0; j < search.job_count(); ++j)
    if (auto hit = search.first_in_job(j)) return hit;
  return std::nullopt;
}

std::optional<AgreeingHit> first_agreeing_hit_parallel(const AmalgamSpec& spec, const Word& f, const Word& g,
                                                       std::span<const FiniteGroup> catalog) {
  const AgreeingSearch search(spec, f, g, catalog);
  const auto n = static_cast<long long>(search.job_count());
  std::vector<std::optional<AgreeingHit>> results(search.job_count());
  std::atomic<long long> best{n};

#pragma omp parallel for schedule(dynamic)
  for (long long j = 0; j < n; ++j) {
    if (j > best.load(std::memory_order_relaxed)) continue;
    results[static_cast<std::size_t>(j)] = search.first_in_job(static_cast<std::size_t>(j));
    if (!results[static_cast<std::size_t>(j)]) continue;
    long long seen = best.load();
    while (j < seen && !best.compare_exchange_weak(seen, j)) {
    }
  }

  const long long b = best.load();
  if (b == n) return std::nullopt;
  return std::move(results[static_cast<std::size_t>(b)]);
}

std::vector<AgreeingHit> all_agreeing_hits(const AmalgamSpec& spec, const Word& f, const Word& g,
                                           std::span<const FiniteGroup> catalog) {
  const AgreeingSearch search(spec, f, g, catalog);
  std::vector<AgreeingHit> out;
  for (std::size_t j = 0; j < search.job_count(); ++j) {
    search.run(j, [&](AgreeingHit h) {
      out.push_back(std::move(h));
      return true;
    });
  }
  return out;
}

}  // namespace cpsep::detail
