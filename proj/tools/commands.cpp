#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "amalgam/error.hpp"
#include "amalgam/separate.hpp"
#include "amalgam/spec_file.hpp"

namespace amalgam::cli {

namespace {

struct Options {
  std::string spec_path;
  std::string out;
  long long seed = 0;
  unsigned p = 0;
  std::size_t budget = 4;
  std::size_t isolation_bound = 4;
  std::size_t image_bound = kDefaultOrderBound;
  std::string split, group, retract, complement;
  std::string subgroup, element, side = "A";
  std::string r, s;
  std::string word, other, cyclic;
  std::string cert_file, spec_override;
};

struct Context {
  Spec spec;
  std::optional<unsigned> p;
  Certificate cert;
  std::ostringstream out;
};

std::string read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::SyntaxError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string num(std::size_t n) { return std::to_string(n); }

void describe(Certificate &cert, std::string const &section, std::string const &prefix,
              Subgroup const &sub)
{
  cert.add(section, prefix + ".order", num(sub.order()));
  cert.add(section, prefix + ".gens", format_permutation_list(sub.generators()));
}

void check(Certificate &cert, std::string line) { cert.add("TRANSCRIPT", "check", std::move(line)); }

Factor parse_side(std::string const &s)
{
  if (s == "A" || s == "a")
    return Factor::A;
  if (s == "B" || s == "b")
    return Factor::B;
  throw Error(ErrorCode::SyntaxError, "side must be A or B, not '" + s + "'");
}

/// A declared subgroup name, or a generator list, inside x.
Subgroup resolve_subgroup(Spec const &spec, FiniteGroup const &x, std::string const &text)
{
  if (auto it = spec.subgroups.find(text); it != spec.subgroups.end()) {
    if (!is_subset(it->second, x))
      throw Error(ErrorCode::NotASubgroup, text + " is not contained in the group in question");
    return restrict_to(it->second, x);
  }
  return Subgroup::generated(x, parse_permutation_list(text, x.degree()));
}

std::string mode_string(std::optional<unsigned> p)
{
  return p ? "p = " + std::to_string(*p) : "finite";
}

// retract verify

int cmd_retract_verify(Context &ctx, Options const &o)
{
  FiniteGroup x;
  Subgroup y, f;
  if (!o.split.empty()) {
    auto const &decl = *std::find_if(ctx.spec.file.splits.begin(), ctx.spec.file.splits.end(),
                                     [&](auto const &d) { return d.name == o.split; });
    (void)ctx.spec.split(o.split);
    x = ctx.spec.group(decl.parent);
    y = resolve_subgroup(ctx.spec, x, decl.retract);
    f = resolve_subgroup(ctx.spec, x, decl.complement);
  } else {
    if (o.group.empty() || o.retract.empty() || o.complement.empty())
      throw Error(ErrorCode::SyntaxError, "give --split or all of --group, --retract, --complement");
    x = ctx.spec.group(o.group);
    y = resolve_subgroup(ctx.spec, x, o.retract);
    f = resolve_subgroup(ctx.spec, x, o.complement);
  }
  auto &c = ctx.cert;
  c.add("TARGET", "X.order", num(x.order()));
  describe(c, "TARGET", "Y", y);
  describe(c, "TARGET", "F", f);

  bool normal = is_normal(f, x);
  Subgroup meet = intersect(y, f);
  check(c, "F normal in X: " + yes(normal) + " (" + num(f.generators().size()) + " x " +
           num(x.generators().size()) + " generator conjugates)");
  check(c, "|Y n F| = " + num(meet.order()) + ", expected 1");
  check(c, "|Y| |F| = " + num(y.order() * f.order()) + ", |X| = " + num(x.order()));

  try {
    SplitExtension::verify(x, y, f);
    c.add("VERDICT", "verdict", "split");
    return kPositive;
  } catch (Error const &e) {
    if (e.code() != ErrorCode::NotNormal && e.code() != ErrorCode::NotComplement &&
        e.code() != ErrorCode::NotCovering)
      throw;
    c.add("VERDICT", "verdict", "not-split");
    c.add("VERDICT", "reason", std::string(to_string(e.code())));
    return kNegative;
  }
}

// lift

int cmd_lift(Context &ctx, Options const &o)
{
  SplitExtension const &ext = ctx.spec.split(o.split);
  Subgroup n = resolve_subgroup(ctx.spec, ext.retract().group(), o.subgroup);
  Lift lift = lift_normal_subgroup(ext, n);
  auto &c = ctx.cert;
  c.add("TARGET", "split", o.split);
  describe(c, "TARGET", "N", n);
  describe(c, "RESULT", "NF", lift.lifted);
  check(c, "NF normal in X: " + yes(is_normal(lift.lifted, ext.whole())));
  check(c, "NF n Y = N: |NF n Y| = " + num(lift.meet_retract.order()) + ", |N| = " +
           num(n.order()) + ", equal " + yes(lift.meet_retract == n));
  check(c, "[X : NF] = " + num(lift.whole_index) + ", [Y : N] = " + num(lift.retract_index));
  c.add("VERDICT", "verdict", "lifted");
  return kPositive;
}

// retract-witness

int cmd_retract_witness(Context &ctx, Options const &o)
{
  SplitExtension const &ext = ctx.spec.split(o.split);
  Permutation x = parse_permutation(o.element, ext.whole().degree());
  auto &c = ctx.cert;
  c.add("MODE", "mode", mode_string(ctx.p));
  c.add("TARGET", "split", o.split);
  c.add("TARGET", "x", x.to_string());
  try {
    RetractWitness w = retract_witness(ext, x, ctx.p);
    c.add("RESULT", "y", w.retract_part.to_string());
    c.add("RESULT", "f", w.complement_part.to_string());
    describe(c, "RESULT", "N", w.n);
    describe(c, "RESULT", "U", w.u);
    describe(c, "RESULT", "V", w.v);
    describe(c, "RESULT", "L", w.l);
    describe(c, "RESULT", "M", w.m);
    check(c, "x = y f: " + yes(w.retract_part * w.complement_part == x));
    check(c, "f in N: " + yes(w.n.contains(w.complement_part)));
    check(c, "L normal in X: " + yes(is_normal(w.l, ext.whole())));
    check(c, "x in Y L: " + yes(in_retract_product(ext, w.l, x)) + " (" +
             num(ext.retract().order() * w.l.order()) + " products)");
    check(c, "[X : L] = " + num(w.l.index()));
    c.add("VERDICT", "verdict", "witness");
    return kPositive;
  } catch (Error const &e) {
    if (e.code() != ErrorCode::NoSeparatingN)
      throw;
    c.add("VERDICT", "verdict", "no-separating-subgroup");
    return kNegative;
  }
}

// compat

int cmd_compat_build(Context &ctx, Options const &o)
{
  AmalgamSpec const &spec = ctx.spec.require_amalgam();
  Factor side = parse_side(o.side);
  Subgroup start = resolve_subgroup(ctx.spec, spec.factor(side), o.subgroup);
  CompatiblePair pair = side == Factor::A ? build_compatible_pair(spec, start)
                                          : build_compatible_pair_from_b(spec, start);
  auto &c = ctx.cert;
  c.add("TARGET", "side", o.side);
  describe(c, "PAIR", "R", pair.r);
  describe(c, "PAIR", "S", pair.s);
  describe(c, "PAIR", "P", pair.p);
  describe(c, "PAIR", "Q", pair.q);
  describe(c, "PAIR", "F", pair.complement);
  bool ok = verify_compatible_pair(spec, pair.r, pair.s);
  check(c, "R normal in A: " + yes(is_normal(pair.r, spec.factor(Factor::A))));
  check(c, "S normal in B: " + yes(is_normal(pair.s, spec.factor(Factor::B))));
  check(c, "|(R n H)phi| = " + num(pair.q.order()) + ", |S n K| = " +
           num(intersect(pair.s, spec.amalgamated(Factor::B)).order()));
  c.add("VERDICT", "verdict", ok ? "compatible" : "incompatible");
  return ok ? kPositive : kNegative;
}

int cmd_compat_verify(Context &ctx, Options const &o)
{
  AmalgamSpec const &spec = ctx.spec.require_amalgam();
  Subgroup r = resolve_subgroup(ctx.spec, spec.factor(Factor::A), o.r);
  Subgroup s = resolve_subgroup(ctx.spec, spec.factor(Factor::B), o.s);
  auto &c = ctx.cert;
  describe(c, "PAIR", "R", r);
  describe(c, "PAIR", "S", s);
  bool rn = is_normal(r, spec.factor(Factor::A));
  bool sn = is_normal(s, spec.factor(Factor::B));
  Subgroup rh = intersect(r, spec.amalgamated(Factor::A));
  Subgroup sk = intersect(s, spec.amalgamated(Factor::B));
  check(c, "R normal in A: " + yes(rn));
  check(c, "S normal in B: " + yes(sn));
  check(c, "|R n H| = " + num(rh.order()) + ", |S n K| = " + num(sk.order()));
  bool ok = verify_compatible_pair(spec, r, s);
  c.add("VERDICT", "verdict", ok ? "compatible" : "incompatible");
  return ok ? kPositive : kNegative;
}

// pchain

PCompatibleChain chain_for(Context &ctx, Options const &o)
{
  AmalgamSpec const &spec = ctx.spec.require_amalgam();
  if (!ctx.p)
    throw Error(ErrorCode::SyntaxError, "--p is required");
  Factor side = parse_side(o.side);
  Subgroup start = resolve_subgroup(ctx.spec, spec.factor(side), o.subgroup);
  return side == Factor::A ? build_p_chain(spec, start, *ctx.p)
                           : build_p_chain_from_b(spec, start, *ctx.p);
}

void describe_chain(Certificate &c, PCompatibleChain const &chain)
{
  for (std::size_t i = 0; i < chain.chain_a.size(); ++i)
    describe(c, "CHAIN", "R" + num(i), chain.chain_a[i]);
  for (std::size_t i = 0; i < chain.chain_b.size(); ++i)
    describe(c, "CHAIN", "S" + num(i), chain.chain_b[i]);
  for (std::size_t i = 0; i < chain.trace.size(); ++i) {
    auto const &st = chain.trace[i];
    check(c, "step " + num(i) + ": |R| = " + num(st.r.order()) + ", |P| = " +
             num(st.p.order()) + ", |Q| = " + num(st.q.order()) + ", |S| = " +
             num(st.s.order()));
  }
}

int cmd_pchain_build(Context &ctx, Options const &o)
{
  PCompatibleChain chain = chain_for(ctx, o);
  ctx.cert.add("MODE", "mode", mode_string(ctx.p));
  describe_chain(ctx.cert, chain);
  ctx.cert.add("VERDICT", "verdict", "built");
  return kPositive;
}

int cmd_pchain_verify(Context &ctx, Options const &o)
{
  PCompatibleChain chain = chain_for(ctx, o);
  AmalgamSpec const &spec = ctx.spec.require_amalgam();
  ctx.cert.add("MODE", "mode", mode_string(ctx.p));
  describe_chain(ctx.cert, chain);
  for (auto const *ch : {&chain.chain_a, &chain.chain_b}) {
    for (std::size_t i = 0; i + 1 < ch->size(); ++i)
      check(ctx.cert, "factor order " + num((*ch)[i + 1].order() / (*ch)[i].order()));
  }
  bool ok = verify_p_chain(spec, chain);
  ctx.cert.add("VERDICT", "verdict", ok ? "verified" : "rejected");
  return ok ? kPositive : kNegative;
}

// delta

/// Order of the intersection of C N over the family.
std::size_t meet_order(Subgroup const &c, SubgroupFamily const &family)
{
  std::vector<Permutation> meet(family.parent.elements().begin(), family.parent.elements().end());
  for (auto const &n : family.members) {
    std::set<Permutation> product;
    for (auto const &a : c.elements()) {
      for (auto const &b : n.elements())
        product.insert(a * b);
    }
    std::erase_if(meet, [&](Permutation const &x) { return !product.count(x); });
  }
  return meet.size();
}

int cmd_delta(Context &ctx, Options const &o)
{
  std::vector<std::string> names;
  if (!o.group.empty())
    names.push_back(o.group);
  else
    for (auto const &g : ctx.spec.file.groups)
      names.push_back(g.name);

  auto &c = ctx.cert;
  c.add("MODE", "mode", mode_string(ctx.p));
  for (auto const &name : names) {
    FiniteGroup const &x = ctx.spec.group(name);
    DeltaFamily delta = compute_delta(x, ctx.p);
    SubgroupFamily family = theta_family(x, ctx.p);
    std::string section = "DELTA " + name;
    c.add(section, "order", num(x.order()));
    c.add(section, "family", num(family.members.size()));
    c.add(section, "members", num(delta.members.size()));
    for (std::size_t i = 0; i < delta.members.size(); ++i)
      c.add(section, "member", "<" + format_permutation_list(delta.members[i].generators()) +
                               "> order " + num(delta.members[i].order()));
    for (auto const &cyc : cyclic_subgroups(x)) {
      std::string line = name + " <" + format_permutation_list(cyc.generators()) + ">: |C| = " +
                         num(cyc.order());
      if (ctx.p)
        line += ", isolated " + yes(is_pprime_isolated_finite(x, cyc, *ctx.p));
      line += ", |meet of C N| = " + num(meet_order(cyc, family));
      check(c, line);
    }
  }
  c.add("VERDICT", "verdict", "computed");
  return kPositive;
}

// words

int cmd_reduce(Context &ctx, Options const &o)
{
  AmalgamSpec const &spec = ctx.spec.require_amalgam();
  GWord w = ctx.spec.word(o.word);
  NormalForm nf = reduce(spec, w);
  ctx.cert.add("TARGET", "word", format_word(w));
  ctx.cert.add("RESULT", "normal-form", format_normal_form(nf));
  ctx.cert.add("RESULT", "amalgam-part", nf.amalgam_part.to_string());
  ctx.cert.add("RESULT", "length", num(nf.length()));
  ctx.cert.add("VERDICT", "verdict", "reduced");
  return kPositive;
}

int cmd_equal(Context &ctx, Options const &o)
{
  AmalgamSpec const &spec = ctx.spec.require_amalgam();
  GWord u = ctx.spec.word(o.word), v = ctx.spec.word(o.other);
  ctx.cert.add("TARGET", "word", format_word(u));
  ctx.cert.add("TARGET", "other", format_word(v));
  check(ctx.cert, "normal form of word: " + format_normal_form(reduce(spec, u)));
  check(ctx.cert, "normal form of other: " + format_normal_form(reduce(spec, v)));
  bool same = equal(spec, u, v);
  ctx.cert.add("VERDICT", "verdict", same ? "equal" : "different");
  return same ? kPositive : kNegative;
}

int cmd_order(Context &ctx, Options const &o)
{
  AmalgamSpec const &spec = ctx.spec.require_amalgam();
  GWord w = ctx.spec.word(o.word);
  CyclicReduction cr = cyclically_reduce(spec, w);
  auto ord = element_order(spec, w);
  ctx.cert.add("TARGET", "word", format_word(w));
  check(ctx.cert, "cyclically reduced core: " + format_normal_form(cr.core) + ", length " +
                  num(cr.core.length()));
  ctx.cert.add("RESULT", "order", ord ? num(*ord) : "infinite");
  ctx.cert.add("VERDICT", "verdict", "computed");
  return kPositive;
}

// coverage

int cmd_coverage(Context &ctx, Options const &)
{
  AmalgamSpec const &spec = ctx.spec.require_amalgam();
  bool full = true;
  ctx.cert.add("MODE", "mode", mode_string(ctx.p));
  for (auto const &rep : omega_projection_coverage(spec, ctx.p)) {
    std::string section = std::string("COVERAGE ") + tag(rep.side);
    ctx.cert.add(section, "family", num(rep.family_size));
    ctx.cert.add(section, "covered", num(rep.covered));
    for (auto const &bad : rep.counterexamples)
      ctx.cert.add(section, "uncovered", "<" + format_permutation_list(bad.generators()) + ">");
    full = full && rep.full();
  }
  ctx.cert.add("VERDICT", "verdict", full ? "full" : "partial");
  return full ? kPositive : kNegative;
}

// separate

void record_isolation(Certificate &c, std::optional<IsolationReport> const &iso)
{
  if (!iso)
    return;
  c.add("ISOLATION", "length-bound", num(iso->length_bound));
  c.add("ISOLATION", "prime-bound", num(iso->prime_bound));
  c.add("ISOLATION", "checked", num(iso->checked));
  c.add("ISOLATION", "violation", iso->isolated() ? "none" : format_word(*iso->violating_element));
}

int cmd_separate(Context &ctx, Options const &o)
{
  AmalgamSpec const &spec = ctx.spec.require_amalgam();
  GWord g = ctx.spec.word(o.word);
  GWord cgen = ctx.spec.word(o.cyclic);
  auto &c = ctx.cert;
  c.add("MODE", "mode", mode_string(ctx.p));
  c.add("MODE", "budget", num(o.budget));
  c.add("TARGET", "word", format_word(g));
  c.add("TARGET", "cyclic", format_word(cgen));
  c.add("TARGET", "word.normal-form", format_normal_form(reduce(spec, g)));
  c.add("TARGET", "cyclic.normal-form", format_normal_form(reduce(spec, cgen)));

  SearchOptions opts;
  opts.budget = o.budget;
  opts.isolation_bound = o.isolation_bound;
  opts.image_order_bound = o.image_bound;
  SeparationResult result = separate_cyclic(spec, g, CyclicSubgroupOfG{cgen}, ctx.p, opts);

  if (auto const *w = std::get_if<SeparabilityWitness>(&result)) {
    record_isolation(c, w->isolation);
    describe(c, "PAIR", "R", w->r);
    describe(c, "PAIR", "S", w->s);
    c.add("PAIR", "multiplicity", num(w->multiplicity));
    c.add("GENERATOR-IMAGES", "degree", num(w->degree));
    auto gens_a = spec.factor(Factor::A).generators();
    auto gens_b = spec.factor(Factor::B).generators();
    for (std::size_t i = 0; i < gens_a.size(); ++i)
      c.add("GENERATOR-IMAGES", "A[" + gens_a[i].to_string() + "]", w->images_a[i].to_string());
    for (std::size_t i = 0; i < gens_b.size(); ++i)
      c.add("GENERATOR-IMAGES", "B[" + gens_b[i].to_string() + "]", w->images_b[i].to_string());

    WitnessCheck wc = verify_witness(spec, *w);
    std::size_t na = spec.factor(Factor::A).order(), nb = spec.factor(Factor::B).order();
    check(c, "A multiplicative on " + num(na * na) + " pairs, B on " + num(nb * nb) + " pairs");
    check(c, "phi agreement on " + num(spec.amalgamated(Factor::A).order()) + " elements of H");
    std::vector<Permutation> all(w->images_a);
    all.insert(all.end(), w->images_b.begin(), w->images_b.end());
    FiniteGroup image = closure(all, w->degree);
    check(c, "image order " + num(image.order()));
    check(c, "independent verification: " + std::string(to_string(wc.reason)));
    c.add("VERDICT", "verdict", "witness");
    return kPositive;
  }
  if (auto const *cert = std::get_if<NonSeparabilityCertificate>(&result)) {
    record_isolation(c, cert->isolation);
    c.add("DELTA", "factor", std::string(1, tag(cert->factor)));
    c.add("DELTA", "conjugator", format_word(cert->conjugator));
    c.add("DELTA", "element", cert->element.to_string());
    describe(c, "DELTA", "member", cert->member);
    c.add("VERDICT", "verdict", "delta-certificate");
    return kNegative;
  }
  if (auto const *m = std::get_if<MemberShortCircuit>(&result)) {
    c.add("RESULT", "exponent", std::to_string(m->exponent));
    check(c, "word = cyclic^" + std::to_string(m->exponent) + " after reduction");
    c.add("VERDICT", "verdict", "member");
    return kNegative;
  }
  auto const &b = std::get<BudgetExhausted>(result);
  c.add("RESULT", "candidates", num(b.candidates));
  c.add("VERDICT", "verdict", "budget-exhausted");
  return kBudgetExhausted;
}

using Handler = std::function<int(Context &, Options const &)>;

struct Command {
  std::vector<std::string> path;
  CLI::App *app;
  Handler handler;
};

struct Parsed {
  std::unique_ptr<CLI::App> app;
  Options options;
  std::vector<Command> commands;
  CLI::App *verify_cert = nullptr;
};

void build_app(Parsed &p)
{
  p.app = std::make_unique<CLI::App>("Free products of finite permutation groups with amalgamation",
                                     "amalgam");
  CLI::App &app = *p.app;
  Options &o = p.options;
  app.require_subcommand(1);

  auto common = [&](CLI::App *sub) {
    sub->add_option("spec", o.spec_path, "spec file")->required();
    sub->add_option("--out", o.out, "certificate path (default SPEC.cert)");
    sub->add_option("--seed", o.seed, "reserved; all searches are deterministic");
  };
  auto add = [&](std::vector<std::string> path, CLI::App *sub, Handler h) {
    common(sub);
    p.commands.push_back({std::move(path), sub, std::move(h)});
  };

  auto *retract = app.add_subcommand("retract", "split extensions");
  retract->require_subcommand(1);
  auto *rv = retract->add_subcommand("verify", "check X = Y F with F normal and Y n F = 1");
  rv->add_option("--split", o.split, "a declared [split]");
  rv->add_option("--group", o.group);
  rv->add_option("--retract", o.retract);
  rv->add_option("--complement", o.complement);
  add({"retract", "verify"}, rv, cmd_retract_verify);

  auto *lift = app.add_subcommand("lift", "lift a normal subgroup N of the retract to NF");
  lift->add_option("--split", o.split)->required();
  lift->add_option("--subgroup", o.subgroup, "subgroup name or generator list")->required();
  add({"lift"}, lift, cmd_lift);

  auto *rw = app.add_subcommand("retract-witness", "normal L with x outside Y L");
  rw->add_option("--split", o.split)->required();
  rw->add_option("--element", o.element)->required();
  rw->add_option("--p", o.p);
  add({"retract-witness"}, rw, cmd_retract_witness);

  auto *compat = app.add_subcommand("compat", "compatible pairs");
  compat->require_subcommand(1);
  auto *cb = compat->add_subcommand("build", "pair from a normal subgroup of one factor");
  cb->add_option("--subgroup", o.subgroup)->required();
  cb->add_option("--side", o.side, "A or B");
  add({"compat", "build"}, cb, cmd_compat_build);
  auto *cv = compat->add_subcommand("verify", "check (R, S) is compatible");
  cv->add_option("--r", o.r)->required();
  cv->add_option("--s", o.s)->required();
  add({"compat", "verify"}, cv, cmd_compat_verify);

  auto *pchain = app.add_subcommand("pchain", "p-compatible chains");
  pchain->require_subcommand(1);
  auto *pb = pchain->add_subcommand("build", "chain from R of p-power index");
  pb->add_option("--subgroup", o.subgroup)->required();
  pb->add_option("--p", o.p)->required();
  pb->add_option("--side", o.side, "A or B");
  add({"pchain", "build"}, pb, cmd_pchain_build);
  auto *pv = pchain->add_subcommand("verify", "build a chain and check it independently");
  pv->add_option("--subgroup", o.subgroup)->required();
  pv->add_option("--p", o.p)->required();
  pv->add_option("--side", o.side, "A or B");
  add({"pchain", "verify"}, pv, cmd_pchain_verify);

  auto *delta = app.add_subcommand("delta", "cyclic subgroups not separated by normal subgroups");
  delta->add_option("--p", o.p);
  delta->add_option("--group", o.group, "default: every [group]");
  add({"delta"}, delta, cmd_delta);

  auto *red = app.add_subcommand("reduce", "normal form of a word");
  red->add_option("--word", o.word)->required();
  add({"reduce"}, red, cmd_reduce);

  auto *eq = app.add_subcommand("equal", "decide u = v");
  eq->add_option("--word", o.word)->required();
  eq->add_option("--other", o.other)->required();
  add({"equal"}, eq, cmd_equal);

  auto *ord = app.add_subcommand("order", "order of a word");
  ord->add_option("--word", o.word)->required();
  add({"order"}, ord, cmd_order);

  auto *sep = app.add_subcommand("separate", "separate a word from a cyclic subgroup");
  sep->add_option("--word", o.word)->required();
  sep->add_option("--cyclic", o.cyclic, "generator of C")->required();
  sep->add_option("--p", o.p);
  sep->add_option("--budget", o.budget, "largest multiplicity tried")->check(CLI::PositiveNumber);
  sep->add_option("--isolation-bound", o.isolation_bound, "word length for the isolation check");
  sep->add_option("--image-bound", o.image_bound, "largest p-mode image group built");
  add({"separate"}, sep, cmd_separate);

  auto *cov = app.add_subcommand("coverage", "run the pair construction on every normal subgroup");
  cov->add_option("--p", o.p);
  add({"coverage"}, cov, cmd_coverage);

  p.verify_cert = app.add_subcommand("verify-cert", "check a certificate");
  p.verify_cert->add_option("file", o.cert_file)->required();
  p.verify_cert->add_option("--spec", o.spec_override, "spec file (default: the recorded one)");
}

/// The options given on the command line, in declaration order, without
/// the spec path and the options that do not affect the result.
std::vector<std::string> canonical_args(Command const &cmd)
{
  std::vector<std::string> args(cmd.path);
  for (auto const *opt : cmd.app->get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty())
      continue;
    std::string const &name = opt->get_lnames().front();
    if (name == "help" || name == "out" || name == "seed")
      continue;
    for (auto const &v : opt->results())
      args.push_back("--" + name + "=" + v);
  }
  return args;
}

Outcome run_command(Command const &cmd, Options const &o, std::string const &spec_path)
{
  Outcome out;
  Context ctx;
  std::string text = read_file(spec_path);
  ctx.spec = parse_spec(text);
  if (o.p) {
    if (!is_prime(o.p))
      throw Error(ErrorCode::ValidationError, std::to_string(o.p) + " is not prime");
    ctx.p = o.p;
  }
  for (auto const &a : canonical_args(cmd))
    ctx.cert.add("COMMAND", "arg", a);
  ctx.cert.add("INPUTS", "spec", spec_path);
  ctx.cert.add("INPUTS", "sha256", sha256_hex(text));

  out.exit_code = cmd.handler(ctx, o);
  out.output = ctx.cert.render_body();
  out.certificate = std::move(ctx.cert);
  out.certificate_path = o.out.empty() ? spec_path + ".cert" : o.out;
  return out;
}

Outcome execute_parsed(std::vector<std::string> const &args, bool for_verification);

Outcome verify_certificate(Options const &o)
{
  Outcome out;
  auto reject = [&](std::string_view reason, std::string const &detail) {
    out.exit_code = kNegative;
    out.output = "rejected: " + std::string(reason) + (detail.empty() ? "" : ": " + detail) + "\n";
    return out;
  };

  Certificate cert;
  try {
    cert = Certificate::parse(read_file(o.cert_file));
  } catch (Error const &e) {
    return reject("Malformed", e.what());
  }
  auto const *command = cert.find("COMMAND");
  auto verdict = cert.value("VERDICT", "verdict");
  auto recorded_spec = cert.value("INPUTS", "spec");
  auto digest = cert.value("INPUTS", "sha256");
  if (!command || command->empty() || !verdict || !recorded_spec || !digest)
    return reject("Malformed", "missing COMMAND, INPUTS or VERDICT");

  std::string spec_path = o.spec_override.empty() ? *recorded_spec : o.spec_override;
  std::string text = read_file(spec_path);
  if (sha256_hex(text) != *digest)
    return reject("InputsMismatch", spec_path + " does not match the recorded digest");
  Spec spec = parse_spec(text);

  std::vector<std::string> args;
  for (auto const &[k, v] : *command) {
    if (k != "arg")
      return reject("Malformed", "unexpected key '" + k + "' in COMMAND");
    args.push_back(v);
  }

  // the witness is checked from its generator images before anything is
  // recomputed
  if (args.front() == "separate" && *verdict == "witness") {
    try {
      AmalgamSpec const &am = spec.require_amalgam();
      auto mode = cert.value("MODE", "mode");
      auto word = cert.value("TARGET", "word");
      auto cyclic = cert.value("TARGET", "cyclic");
      auto degree = cert.value("GENERATOR-IMAGES", "degree");
      if (!mode || !word || !cyclic || !degree)
        return reject("Malformed", "missing MODE, TARGET or GENERATOR-IMAGES entries");
      SeparabilityWitness w;
      w.target = parse_word(*word, am);
      w.subgroup.generator = parse_word(*cyclic, am);
      if (mode->rfind("p = ", 0) == 0)
        w.p = static_cast<unsigned>(std::stoul(mode->substr(4)));
      else if (*mode != "finite")
        return reject("Malformed", "bad mode '" + *mode + "'");
      w.degree = static_cast<unsigned>(std::stoul(*degree));
      for (Factor f : {Factor::A, Factor::B}) {
        auto &images = f == Factor::A ? w.images_a : w.images_b;
        for (auto const &gen : am.factor(f).generators()) {
          std::string key = std::string(1, tag(f)) + "[" + gen.to_string() + "]";
          auto img = cert.value("GENERATOR-IMAGES", key);
          if (!img)
            return reject("Malformed", "no image for " + key);
          images.push_back(parse_permutation(*img, w.degree));
        }
      }
      WitnessCheck wc = verify_witness(am, w);
      if (!wc.ok())
        return reject(to_string(wc.reason), wc.detail);
    } catch (Error const &e) {
      return reject("Malformed", e.what());
    } catch (std::logic_error const &e) {
      return reject("Malformed", e.what());
    }
  }

  args.push_back(spec_path);
  Outcome again = execute_parsed(args, true);
  if (!again.certificate)
    return reject("VerdictMismatch", "the recorded command now fails: " + again.error);
  auto fresh = again.certificate->value("VERDICT", "verdict");
  if (fresh != verdict)
    return reject("VerdictMismatch", "recorded '" + *verdict + "', recomputed '" +
                                     fresh.value_or("") + "'");
  if (again.certificate->render_body() != cert.render_body())
    return reject("BodyMismatch", "recomputed certificate differs");

  out.output = "accepted: " + *verdict + "\n";
  return out;
}

Outcome execute_parsed(std::vector<std::string> const &args, bool for_verification)
{
  Parsed p;
  build_app(p);
  Outcome out;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    p.app->parse(reversed);
  } catch (CLI::ParseError const &e) {
    std::ostringstream o, err;
    int code = p.app->exit(e, o, err);
    out.output = o.str();
    out.error = err.str();
    out.exit_code = code == 0 ? kPositive : kInputError;
    return out;
  }

  try {
    if (p.verify_cert->parsed()) {
      if (for_verification)
        throw Error(ErrorCode::SyntaxError, "verify-cert cannot be recorded");
      return verify_certificate(p.options);
    }
    for (auto const &cmd : p.commands) {
      if (cmd.app->parsed())
        return run_command(cmd, p.options, p.options.spec_path);
    }
    throw Error(ErrorCode::SyntaxError, "no command");
  } catch (Error const &e) {
    out.exit_code = kInputError;
    out.error = std::string(e.what()) + "\n";
  } catch (std::exception const &e) {
    out.exit_code = kInputError;
    out.error = std::string("error: ") + e.what() + "\n";
  }
  return out;
}

} // namespace

Outcome execute(std::vector<std::string> const &args)
{
  return execute_parsed(args, false);
}

} // namespace amalgam::cli
