# flake8: noqa: F401, F403, F405

from .baselines import *
from .bench import *
from .codec import *
from .color import *
from .config import *
from .container import *
from .core import *
from .decoder import *
from .denoiser import *
from .encoder import *
from .image import *
from .mask import *
from .metrics import *
from .operator import *
from .utils import *

__all__ = []
__all__.extend(baselines.__all__)
__all__.extend(bench.__all__)
__all__.extend(codec.__all__)
__all__.extend(color.__all__)
__all__.extend(config.__all__)
__all__.extend(container.__all__)
__all__.extend(core.__all__)
__all__.extend(decoder.__all__)
__all__.extend(denoiser.__all__)
__all__.extend(encoder.__all__)
__all__.extend(image.__all__)
__all__.extend(mask.__all__)
__all__.extend(metrics.__all__)
__all__.extend(operator.__all__)
__all__.extend(utils.__all__)
