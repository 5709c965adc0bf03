#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bicover/homomorphism.hpp"
#include "bicover/shift.hpp"

namespace bicover {

// Sliding block code with the given memory and anticipation: the image
// symbol at position i is blocks[w] for the domain window w covering
// positions [i - memory, i + anticipation].
struct SlidingBlockCode {
  SubshiftPresentation domain, codomain;
  int memory = 0, anticipation = 0;
  std::map<Word, std::string> blocks;
  int window() const { return memory + anticipation + 1; }
};

// Validates that the block map is total on the domain's window words, has
// no entries outside them, and sends admissible words to admissible words
// (checked on words up to check_length).
SlidingBlockCode make_code(SubshiftPresentation domain,
                           SubshiftPresentation codomain, int memory,
                           int anticipation, std::map<Word, std::string> blocks,
                           int check_length = 12);

// Image of a word under the block map; shorter than the input by window-1.
Word apply_block_map(const SlidingBlockCode& code, const Word& w);

// The 1-block code between edge shifts induced by a homomorphism. Edges
// removed by essentialization carry no points and are dropped.
SlidingBlockCode code_from_homomorphism(const GraphHomomorphism& phi);

// One point of a closing failure witness, read as
//   ... (left_cycle)^inf left_tail right_tail (right_cycle)^inf ...
// The two points of a witness share their left parts and differ in the
// right parts for a right-closing failure, and symmetrically on the left.
struct EventuallyPeriodicPoint {
  Word left_cycle, left_tail, right_tail, right_cycle;
};

struct ClosingWitness {
  EventuallyPeriodicPoint first, second;
};

struct ClosingProfile {
  bool right_closing = true, left_closing = true, bi_closing = true;
  std::optional<ClosingWitness> right_witness, left_witness;
  bool recoded = false;  // the analysis ran on a higher-block recoding
};

// Decides both closing properties exactly via pair graphs: a failure is a
// divergence pair with equal images extending to a bi-infinite pair of
// trips. Codes that are not 1-block on an edge shift are recoded first,
// so the domain must be of finite type.
ClosingProfile closing_profile(const SlidingBlockCode& code);

// A 1-block presentation of a code on a higher-block edge shift. beta is
// the conjugacy carrying domain points to the recoded edge shift, so that
// one_block composed with beta equals the original code index-for-index.
struct RecodedCode {
  SlidingBlockCode one_block;
  SlidingBlockCode beta;
};

RecodedCode recode_one_block(const SlidingBlockCode& code,
                             int check_length = 12);

}  // namespace bicover
