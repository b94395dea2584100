// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Comparison heuristics for the polarized-communities objective.

mod bansal;
mod greedy;
mod local_search;
mod pick;

pub use bansal::{bansal, bansal_with, BansalConfig};
pub use greedy::{greedy_peel, greedy_peel_trace, GreedyTrace};
pub use local_search::{local_search, local_search_best_of, LocalSearchConfig, LocalSearchRun};
pub use pick::{pick_an_edge, PickRule};
