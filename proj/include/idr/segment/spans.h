// include/idr/segment/spans.h

// Copyright 2026  The idrkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef IDR_SEGMENT_SPANS_H_
#define IDR_SEGMENT_SPANS_H_

#include <optional>
#include <string>
#include <string_view>

#include "idr/segment/context.h"

namespace idr::segment {

enum class SpanSource { kExternal, kFallback };

std::string_view span_source_name(SpanSource s);
SpanSource parse_span_source(std::string_view s);

// Byte offsets into ContextWindow::text.
struct ArgSpans {
  ByteRange arg1;
  ByteRange arg2;
  SpanSource source = SpanSource::kFallback;
  bool operator==(const ArgSpans &) const = default;
};

struct SpanCheck {
  bool ok = true;
  std::string reason;  // "empty", "bounds", "overlap" or "order"
};

SpanCheck validate_spans(const ArgSpans &spans, std::string_view text);

// Locates a segmenter answer inside the context: exact substring first,
// then a match that treats any whitespace run as equivalent. Searches from
// `from` onward before falling back to the whole text.
std::optional<ByteRange> locate_span(std::string_view text, std::string_view needle,
                                     std::size_t from = 0);

// Offline span finder built only from punctuation and conjunctions.
// Arg2 runs from the relation offset to the end of its sentence; Arg1 is the
// clause right before it or, for a sentence-initial relation, the whole
// previous sentence. Terminal punctuation is trimmed from both.
std::optional<ArgSpans> fallback_spans(const ContextWindow &ctx);

}  // namespace idr::segment

#endif  // IDR_SEGMENT_SPANS_H_
