#include "eqfree/stable_domain.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace eqfree {

std::vector<std::size_t> SDTrace::ranks() const {
  std::vector<std::size_t> out;
  out.reserve(iterates.size());
  for (const SubgroupGraph& g : iterates) out.push_back(g.rank());
  return out;
}

namespace {

SubgroupGraph image_of(const Homomorphism& f, const SubgroupGraph& domain_graph) {
  std::vector<Word> images;
  for (const Word& b : domain_graph.basis().words) images.push_back(f.apply(b));
  return SubgroupGraph::fold(f.codomain(), std::move(images));
}

}  // namespace

SDTrace sd_iterate(const Homomorphism& g, const Homomorphism& h,
                   std::size_t max_iter, std::size_t work_budget) {
  require_same_alphabet(g.domain(), h.domain(), "sd_iterate");
  require_same_alphabet(g.codomain(), h.codomain(), "sd_iterate");
  if (max_iter == 0) throw MalformedInput("max_iter must be positive");

  SDTrace trace;
  if (!is_injective(g)) {
    trace.status = SDStatus::unsupported;
    trace.note =
        "g is not injective: the iterates need not be finitely generated";
    return trace;
  }

  std::size_t image_len = 1;
  for (const Homomorphism* f : {&g, &h})
    for (const Word& w : f->images()) image_len = std::max(image_len, w.length());

  trace.iterates.push_back(SubgroupGraph::whole_group(g.domain()));
  while (trace.iterates.size() < max_iter) {
    const SubgroupGraph& cur = trace.iterates.back();
    std::size_t basis_letters = 0;
    for (const Word& b : cur.basis().words) basis_letters += b.length();
    if (basis_letters > work_budget / image_len) {
      trace.status = SDStatus::cap_reached;
      trace.note = "work budget exceeded before iterate " +
                   std::to_string(trace.iterates.size());
      return trace;
    }
    SubgroupGraph g_img = image_of(g, cur);
    SubgroupGraph h_img = image_of(h, cur);
    if (g_img.edge_count() != 0 &&
        h_img.edge_count() > work_budget / g_img.edge_count()) {
      trace.status = SDStatus::cap_reached;
      trace.note = "work budget exceeded before iterate " +
                   std::to_string(trace.iterates.size());
      return trace;
    }
    SubgroupGraph meet = intersect(g_img, h_img);
    SubgroupGraph next = preimage(g, meet);
    trace.iterates.push_back(std::move(next));
    const std::size_t i = trace.iterates.size() - 2;
    if (equal(trace.iterates[i], trace.iterates[i + 1])) {
      trace.status = SDStatus::stabilized;
      trace.stabilized_index = i;
      trace.sd = trace.iterates[i];
      return trace;
    }
  }
  trace.status = SDStatus::cap_reached;
  trace.note = "no stabilisation within the iteration cap";
  return trace;
}

PhiMap build_phi(const Homomorphism& g, const Homomorphism& h,
                 const SubgroupGraph& sd) {
  require_same_alphabet(g.domain(), h.domain(), "build_phi");
  require_same_alphabet(g.codomain(), h.codomain(), "build_phi");
  require_same_alphabet(sd.alphabet(), g.domain(), "build_phi");
  if (!is_injective(h))
    throw Unsupported("build_phi requires h injective: h^-1 must be a function");

  Basis basis = sd.basis();
  std::vector<Word> h_images;
  h_images.reserve(basis.words.size());
  for (const Word& b : basis.words) h_images.push_back(h.apply(b));
  SubgroupGraph h_sd = SubgroupGraph::fold(h.codomain(), h_images);

  std::vector<std::string> names;
  for (std::size_t i = 0; i < basis.words.size(); ++i)
    names.push_back("s" + std::to_string(i + 1));
  AlphabetPtr phi_alphabet = make_alphabet(std::move(names));

  std::vector<Word> phi_images;
  for (const Word& b : basis.words) {
    Word gb = g.apply(b);
    if (!h_sd.member(gb))
      throw InvalidStableDomain(
          "g(sd) is not contained in h(sd): not a stable domain");
    phi_images.push_back(transliterate(h_sd.express(gb), phi_alphabet));
  }
  Homomorphism phi(phi_alphabet, phi_alphabet, std::move(phi_images));
  Homomorphism embedding(phi_alphabet, sd.alphabet(), basis.words);
  return PhiMap{std::move(phi), std::move(basis), std::move(embedding)};
}

SDTrace stable_image(const Homomorphism& phi, std::size_t max_iter) {
  if (!phi.is_endomorphism())
    throw AlphabetMismatch("stable_image requires an endomorphism");
  if (!is_injective(phi)) {
    SDTrace trace;
    trace.status = SDStatus::unsupported;
    trace.note = "phi is not injective";
    return trace;
  }
  return sd_iterate(Homomorphism::identity(phi.domain()), phi, max_iter);
}

bool acts_as_automorphism(const Homomorphism& phi, const SubgroupGraph& G) {
  require_same_alphabet(phi.domain(), G.alphabet(), "acts_as_automorphism");
  if (!phi.is_endomorphism())
    throw AlphabetMismatch("acts_as_automorphism requires an endomorphism");
  if (!is_injective(phi))
    throw Unsupported("acts_as_automorphism requires phi injective");
  std::vector<Word> images;
  for (const Word& b : G.basis().words) images.push_back(phi.apply(b));
  SubgroupGraph phi_G = SubgroupGraph::fold(phi.codomain(), std::move(images));
  if (!includes(G, phi_G))
    throw NotInvariant("the subgroup is not invariant under phi");
  return equal(phi_G, G);
}

SymmetryReport sd_symmetry_check(const Homomorphism& g, const Homomorphism& h,
                                 std::size_t max_iter) {
  SymmetryReport report;
  report.trace_gh = sd_iterate(g, h, max_iter);
  report.trace_hg = sd_iterate(h, g, max_iter);
  if (report.trace_gh.status != SDStatus::stabilized ||
      report.trace_hg.status != SDStatus::stabilized)
    return report;  // inconclusive

  report.conclusive = true;
  report.sd_equal = equal(*report.trace_gh.sd, *report.trace_hg.sd);

  PhiMap phi_gh = build_phi(g, h, *report.trace_gh.sd);
  PhiMap phi_hg = build_phi(h, g, *report.trace_hg.sd);
  report.phi_gh_automorphism = acts_as_automorphism(
      phi_gh.phi, SubgroupGraph::whole_group(phi_gh.phi.domain()));
  report.phi_hg_automorphism = acts_as_automorphism(
      phi_hg.phi, SubgroupGraph::whole_group(phi_hg.phi.domain()));
  report.biconditional_holds =
      report.sd_equal ==
      (report.phi_gh_automorphism && report.phi_hg_automorphism);
  return report;
}

}  // namespace eqfree
