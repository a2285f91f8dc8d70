from .pages import (LevelwiseChains, SpectralPage, d1, d1_squared_violations, e1_page, e2_page, total_homology,
                    vanishing_line_check)
from .stability import (PRESETS, FloorAffine, NoRangeDerivable, StabilityRange, StabilitySpec,
                        stability_range)
