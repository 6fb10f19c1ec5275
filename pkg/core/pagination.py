from rest_framework.pagination import PageNumberPagination


class StandardResultsSetPagination(PageNumberPagination):
    """Stored runs carry full reports, so pages stay small."""
    page_size = 10
    page_size_query_param = 'page_size'
    max_page_size = 50
