"""Application constants."""

from scipy.constants import Boltzmann, c, e, hbar

# 物理常数（SI 精确定义，不可配置）
K_B = Boltzmann          # J/K
HBAR = hbar              # J·s
C_LIGHT = c              # m/s
ELEMENTARY_CHARGE = e    # C，用于 eV -> rad/s 换算

# 默认频率网格：80 点，对数均匀分布于 [1e11, 1e19] rad/s
DEFAULT_GRID_POINTS = 80
DEFAULT_GRID_MIN = 1e11
DEFAULT_GRID_MAX = 1e19

# Kramers-Kronig 延拓
KK_RTOL = 1e-6
KK_SEGMENT_NODES = 8         # 每个表格区间的 Gauss-Legendre 节点数
KK_PANEL_NODES = 16          # 尾部每个十倍频程面板的节点数
KK_MAX_BISECTIONS = 12
KK_TAIL_DECADES = 12         # 低频/高频外推积分延伸的十倍频程数
KK_HIGH_TAIL_EXPONENT = 3    # ε″ ~ ω⁻³

# Matsubara 求和
DEFAULT_TEMPERATURE = 300.0  # K
DEFAULT_TERM_TOLERANCE = 1e-9
DEFAULT_QUADRATURE_TOLERANCE = 1e-8
TRUNCATION_RUN = 5           # 连续 5 项均小于阈值才截断
LAGUERRE_NODES = 60
LAGUERRE_MAX_NODES = 480
MATSUBARA_BLOCK = 64
MATSUBARA_MAX_BLOCK = 1024
MATSUBARA_MAX_TERMS = 2_000_000

# 近邻力近似适用性：R 至少为 d 的 10 倍
PFA_RADIUS_RATIO = 10.0

# 默认金感应面（Drude）
GOLD_PLASMA_FREQUENCY = 1.37e16  # rad/s
GOLD_DAMPING = 5.3e13            # rad/s

# 默认分离距离：40 nm - 5 µm，64 点
DEFAULT_D_MIN = 40e-9
DEFAULT_D_MAX = 5e-6
DEFAULT_SEPARATIONS = 64

# 数据集
DEFAULT_N_SAMPLES = 5000
DEFAULT_VALIDATION_FRACTION = 0.2
MAX_FAILED_FRACTION = 0.01

# 实验数据分箱
DEFAULT_BINS = 32

# 自助法置信带
BOOTSTRAP_RESAMPLES = 1000
BOOTSTRAP_LEVEL = 0.90
