"""
Configuración general de la aplicación ITRFlow
"""

# Configuración de Streamlit
PAGE_TITLE = "ITRFlow"
PAGE_ICON = "🗜️"
LAYOUT = "wide"
INITIAL_SIDEBAR_STATE = "expanded"

# Configuración de la compresión
DEFAULT_MAX_RANK = 8
DEFAULT_K = 2
DEFAULT_FORMAT = 'nt'

AVAILABLE_FORMATS = {
    'nt': 'N-Triples (subconjunto)',
    'el': 'Lista de aristas (src⇥label⇥dst)'
}

# Contenedor .itr
CONTAINER_MAGIC = b"ITR"
CONTAINER_VERSION = b"1"
FLAG_ITR_PLUS = 0x01
FLAG_IMPLICIT_NODES = 0x02

# Estructuras sucintas
RANK_BLOCK_BITS = 512

# Oráculo de fuerza bruta (solo tests)
ORACLE_EDGE_LIMIT = 20

# Códigos de salida de la CLI
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_FORMAT = 3

# Logging
LOG_ENV_VAR = "ITR_LOG"
LOG_LEVELS = {
    'off': None,
    'info': 'INFO',
    'debug': 'DEBUG'
}
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Benchmark
DEFAULT_BENCH_REPEAT = 500
DEFAULT_BENCH_QUERIES = 50

# Visualización
PLOT_STYLE = 'seaborn-v0_8-darkgrid'
COLOR_PALETTE = "husl"

# Límites de Archivo
MAX_FILE_SIZE_MB = 200

# Mensajes
MESSAGES = {
    'no_graph': '⚠️ Primero debes comprimir un grafo o cargar un archivo .itr en la sección **Compresión**',
    'graph_loaded': '✅ Grafo cargado exitosamente',
    'compression_success': '✅ Compresión completada exitosamente',
    'container_loaded': '✅ Contenedor .itr cargado exitosamente',
    'no_results': 'ℹ️ La consulta no devolvió resultados',
    'not_itr_plus': '⚠️ El contenedor no fue comprimido en modo ITR+',
}
